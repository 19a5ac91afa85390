from fractions import Fraction

import pytest

from ramified.covering import (
    BranchingDatum,
    Constellation,
    branching_datum,
    galois_rh_genus,
    genus_rh,
    is_subject_to,
)
from ramified.errors import InvalidConstellation
from ramified.perm import Permutation

from helpers import random_constellation, random_permutation, rng


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def constellation(n, *labeled):
    return Constellation(n, tuple(labeled))


@pytest.fixture
def datum_223():
    # slots (0 1), (1 2) and the forced inverse of their product
    s1, s2 = cyc(3, (0, 1)), cyc(3, (1, 2))
    s3 = (s1 * s2).inverse()
    return constellation(3, ("p1", s1), ("p2", s2), ("p3", s3))


def six_transpositions_degree2():
    t = cyc(2, (0, 1))
    return constellation(2, *((f"p{i + 1}", t) for i in range(6)))


class TestValidation:
    def test_product_must_be_identity(self):
        with pytest.raises(InvalidConstellation):
            constellation(3, ("p1", cyc(3, (0, 1))), ("p2", cyc(3, (1, 2))))

    def test_joint_action_must_be_transitive(self):
        t = cyc(4, (0, 1))
        with pytest.raises(InvalidConstellation):
            constellation(4, ("p1", t), ("p2", t))

    def test_degree_mismatch(self):
        with pytest.raises(InvalidConstellation):
            constellation(3, ("p1", cyc(2, (0, 1))), ("p2", cyc(2, (0, 1))))

    def test_json_round_trip(self, datum_223):
        data = datum_223.to_json()
        assert data["degree"] == 3
        assert data["slots"][0] == {"point": "p1", "perm": [1, 0, 2]}
        assert Constellation.from_json(data) == datum_223

    def test_json_validates(self):
        bad = {"degree": 3, "slots": [{"point": "p1", "perm": [1, 0, 2]}]}
        with pytest.raises(InvalidConstellation):
            Constellation.from_json(bad)


class TestBranchingDatum:
    def test_n_cycle_pair_gives_nn(self):
        for n in (2, 3, 5, 7):
            sigma = cyc(n, tuple(range(n)))
            c = constellation(n, ("p1", sigma), ("p2", sigma.inverse()))
            datum, _ = branching_datum(c)
            assert datum.orders() == (n, n)

    def test_slot_orders_223(self, datum_223):
        datum, passport = branching_datum(datum_223)
        assert datum.orders() == (2, 2, 3)
        assert passport == [(2, 1), (2, 1), (3,)]

    def test_identity_slots_omitted_from_datum(self):
        c = constellation(1, ("p1", Permutation.identity(1)))
        datum, passport = branching_datum(c)
        assert len(datum) == 0
        assert passport == [(1,)]

    def test_minimality(self, datum_223):
        datum, _ = branching_datum(datum_223)
        assert is_subject_to(datum_223, datum)
        for i, (label, order) in enumerate(datum.entries):
            for smaller in range(2, order):
                if order % smaller:
                    continue
                entries = list(datum.entries)
                entries[i] = (label, smaller)
                assert not is_subject_to(datum_223, BranchingDatum(tuple(entries)))


class TestGenus:
    def test_a5_regular_genus_zero(self):
        from ramified.galois import galois_closure

        x = cyc(5, (0, 1), (2, 3))
        y = cyc(5, (0, 2, 4))
        xy = x * y
        assert xy.order() == 5
        c = constellation(5, ("p1", x), ("p2", y), ("p3", xy.inverse()))
        regular = galois_closure(c)
        assert regular.degree == 60
        assert genus_rh(regular) == 0

    def test_z6_torus(self):
        # regular Z/6 with slot orders (2, 3, 6)
        sigma = cyc(6, tuple(range(6)))
        g1 = sigma * sigma * sigma
        g2 = sigma * sigma
        g3 = (g1 * g2).inverse()
        c = constellation(6, ("p1", g1), ("p2", g2), ("p3", g3))
        datum, _ = branching_datum(c)
        assert datum.orders() == (2, 3, 6)
        assert genus_rh(c) == 1

    def test_six_transpositions_genus_two(self):
        assert genus_rh(six_transpositions_degree2()) == 2

    def test_nonnegative_and_integral_on_random(self):
        r = rng()
        for _ in range(100):
            c = random_constellation(r)
            assert genus_rh(c) >= 0

    def test_relabeling_invariance(self):
        r = rng()
        for _ in range(50):
            c = random_constellation(r)
            relabel = random_permutation(r, c.degree)
            moved = c.relabeled(relabel)
            assert genus_rh(moved) == genus_rh(c)
            d1, p1 = branching_datum(c)
            d2, p2 = branching_datum(moved)
            assert d1.entries == d2.entries
            assert p1 == p2


class TestIsSubjectTo:
    def test_own_datum(self):
        r = rng()
        for _ in range(50):
            c = random_constellation(r)
            datum, _ = branching_datum(c)
            assert is_subject_to(c, datum)

    def test_divisibility_up(self, datum_223):
        bigger = BranchingDatum((("p1", 2), ("p2", 2), ("p3", 6)))
        assert is_subject_to(datum_223, bigger)

    def test_divisibility_violated(self, datum_223):
        wrong = BranchingDatum((("p1", 2), ("p2", 2), ("p3", 2)))
        assert not is_subject_to(datum_223, wrong)

    def test_label_absent_requires_identity(self, datum_223):
        missing = BranchingDatum((("p1", 2), ("p2", 2)))
        assert not is_subject_to(datum_223, missing)


class TestGaloisRhGenus:
    def test_tetra_family(self):
        assert galois_rh_genus(12, [2, 3, 3]) == 0

    def test_torus_244(self):
        assert galois_rh_genus(4, [2, 4, 4]) == 1

    def test_hyperelliptic_genus_two(self):
        assert galois_rh_genus(2, [2] * 6) == 2

    def test_non_integer_output_is_fractional(self):
        assert galois_rh_genus(2, [2, 2, 2]) == Fraction(1, 2)

    def test_matches_genus_rh_on_regular_constellations(self):
        sigma = cyc(6, tuple(range(6)))
        g1 = sigma * sigma * sigma
        g2 = sigma * sigma
        c = constellation(
            6, ("p1", g1), ("p2", g2), ("p3", (g1 * g2).inverse())
        )
        datum, _ = branching_datum(c)
        assert galois_rh_genus(6, datum.orders()) == genus_rh(c)
