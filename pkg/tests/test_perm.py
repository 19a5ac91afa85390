import pytest

from ramified.errors import CapExceeded, NotTransitive
from ramified.perm import (
    Permutation,
    block_systems,
    compose,
    cycle_data,
    derived_subgroup,
    generate_group,
    is_solvable,
)

from helpers import (
    brute_force_order,
    random_permutation,
    rng,
    solvable_by_chain_oracle,
)


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


class TestCompose:
    def test_identity_case(self):
        p = cyc(2, (0, 1))
        assert compose(p, Permutation.identity(2)) == p
        assert compose(Permutation.identity(2), p) == p

    def test_hand_evaluated_example(self):
        # apply (0 1) first, then (1 2)
        assert compose(Permutation((1, 0, 2)), Permutation((0, 2, 1))).images == (2, 0, 1)

    def test_inverse_axiom(self):
        r = rng()
        for _ in range(100):
            p = random_permutation(r, r.randint(1, 12))
            assert (p * p.inverse()).is_identity()
            assert (p.inverse() * p).is_identity()

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(Permutation((1, 0)), Permutation((0, 1, 2)))

    def test_associativity(self):
        r = rng()
        for _ in range(200):
            n = r.randint(1, 10)
            p, q, s = (random_permutation(r, n) for _ in range(3))
            assert (p * q) * s == p * (q * s)


class TestCycleData:
    def test_identity(self):
        ctype, order = cycle_data(Permutation.identity(5))
        assert ctype == (1, 1, 1, 1, 1)
        assert order == 1

    def test_double_transposition(self):
        ctype, order = cycle_data(Permutation((1, 0, 3, 2)))
        assert ctype == (2, 2)
        assert order == 2

    def test_lcm_of_cycle_lengths(self):
        p = cyc(5, (0, 1), (2, 3, 4))
        ctype, order = cycle_data(p)
        assert sorted(ctype) == [2, 3]
        assert order == 6

    def test_order_matches_brute_force(self):
        r = rng()
        for _ in range(50):
            p = random_permutation(r, r.randint(1, 10))
            assert cycle_data(p)[1] == brute_force_order(p)


class TestGenerateGroup:
    def test_s3_from_transpositions(self):
        g = generate_group([cyc(3, (0, 1)), cyc(3, (1, 2))])
        assert g.order == 6
        assert g.transitive

    def test_cyclic_five(self):
        g = generate_group([cyc(5, (0, 1, 2, 3, 4))])
        assert g.order == 5
        assert g.transitive

    def test_intransitive_transposition(self):
        g = generate_group([cyc(4, (0, 1))])
        assert g.order == 2
        assert not g.transitive

    def test_cap_exceeded(self):
        with pytest.raises(CapExceeded):
            generate_group([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1))], cap=10)

    def test_closure_is_closed(self):
        g = generate_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        assert g.order == 24
        elements = set(e.images for e in g.elements)
        for a in g.elements:
            for b in g.elements:
                assert (a * b).images in elements

    def test_identity_listed_first(self):
        g = generate_group([cyc(3, (0, 1, 2))])
        assert g.elements[0].is_identity()


class TestIsSolvable:
    def test_s4_solvable(self):
        s4 = generate_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        assert s4.order == 24
        assert is_solvable(s4)

    def test_a5_not_solvable(self):
        a5 = generate_group([cyc(5, (0, 1, 2)), cyc(5, (0, 1, 2, 3, 4))])
        assert a5.order == 60
        assert not is_solvable(a5)

    def test_cyclic_groups_solvable(self):
        for n in range(1, 31):
            g = generate_group([Permutation.from_cycles(n, [tuple(range(n))])])
            assert is_solvable(g)

    def test_derived_series_of_s4(self):
        s4 = generate_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
        a4 = derived_subgroup(s4)
        assert a4.order == 12
        v4 = derived_subgroup(a4)
        assert v4.order == 4
        assert derived_subgroup(v4).order == 1

    def test_agrees_with_chain_oracle_small_orders(self):
        r = rng()
        seen_orders = set()
        for _ in range(40):
            n = r.randint(2, 4)
            gens = [random_permutation(r, n) for _ in range(2)]
            g = generate_group(gens)
            if g.order <= 24:
                seen_orders.add(g.order)
                assert is_solvable(g) == solvable_by_chain_oracle(g)
        assert len(seen_orders) >= 3


class TestBlockSystems:
    def test_cyclic_c4_regular(self):
        g = generate_group([cyc(4, (0, 1, 2, 3))])
        systems = block_systems(g)
        assert systems == [((0, 2), (1, 3))]

    def test_s3_natural_primitive(self):
        g = generate_group([cyc(3, (0, 1)), cyc(3, (1, 2))])
        assert block_systems(g) == []

    def test_regular_s3_imprimitive(self):
        s3 = generate_group([cyc(3, (0, 1)), cyc(3, (1, 2))])
        index = {e.images: i for i, e in enumerate(s3.elements)}
        regular_gens = [
            Permutation(
                tuple(index[tuple(g.images[x] for x in e.images)] for e in s3.elements)
            )
            for g in s3.generators
        ]
        g = generate_group(regular_gens)
        assert g.order == 6
        assert len(block_systems(g)) >= 1

    def test_not_transitive_rejected(self):
        g = generate_group([cyc(4, (0, 1))])
        with pytest.raises(NotTransitive):
            block_systems(g)

    def test_elementary_abelian_regular_has_coarse_systems(self):
        # regular (Z/2)^3: every subgroup gives a block system, including
        # non-cyclic rank-2 subgroups that pair closure alone cannot see
        a = Permutation((1, 0, 3, 2, 5, 4, 7, 6))
        b = Permutation((2, 3, 0, 1, 6, 7, 4, 5))
        c = Permutation((4, 5, 6, 7, 0, 1, 2, 3))
        g = generate_group([a, b, c])
        assert g.order == 8
        systems = block_systems(g)
        sizes = sorted(len(part[0]) for part in systems)
        assert sizes == [2] * 7 + [4] * 7

    def test_blocks_ordered_by_size(self):
        g = generate_group([cyc(8, tuple(range(8)))])
        systems = block_systems(g)
        sizes = [len(part[0]) for part in systems]
        assert sizes == sorted(sizes)
