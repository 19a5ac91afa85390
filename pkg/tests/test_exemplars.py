import math

import pytest

from ramified.classify import DatumFamily, classify_orders
from ramified.covering import branching_datum, genus_rh
from ramified.errors import UnrealizableParam
from ramified.exemplars import ExemplarSpec, all_exemplars, exemplar
from ramified.galois import dominates, is_galois, monodromy_group
from ramified.perm import block_systems, is_solvable

from helpers import random_subject_constellation, rng

EXPECTED = {
    DatumFamily.POWER_NN: dict(datum=(5, 5), degree=5, genus=0, order=5),
    DatumFamily.DIHEDRAL_22N: dict(datum=(2, 2, 5), degree=10, genus=0, order=10),
    DatumFamily.TETRA_233: dict(datum=(2, 3, 3), degree=12, genus=0, order=12),
    DatumFamily.OCTA_234: dict(datum=(2, 3, 4), degree=24, genus=0, order=24),
    DatumFamily.ICOSA_235: dict(datum=(2, 3, 5), degree=60, genus=0, order=60),
    DatumFamily.TORUS_236: dict(datum=(2, 3, 6), degree=6, genus=1, order=6),
    DatumFamily.TORUS_333: dict(datum=(3, 3, 3), degree=3, genus=1, order=3),
    DatumFamily.TORUS_244: dict(datum=(2, 4, 4), degree=4, genus=1, order=4),
    DatumFamily.TORUS_2222: dict(datum=(2, 2, 2, 2), degree=2, genus=1, order=2),
}


@pytest.fixture(scope="module")
def exemplars():
    return dict(all_exemplars(param=5, torus_param=1))


class TestNineExemplars:
    def test_all_are_galois(self, exemplars):
        for family, c in exemplars.items():
            assert is_galois(c), family

    def test_data_match_families(self, exemplars):
        for family, c in exemplars.items():
            datum, _ = branching_datum(c)
            assert datum.orders() == EXPECTED[family]["datum"], family
            assert classify_orders(datum.orders()).tag == family

    def test_genus_split(self, exemplars):
        for family, c in exemplars.items():
            assert genus_rh(c) == EXPECTED[family]["genus"], family

    def test_monodromy_orders(self, exemplars):
        for family, c in exemplars.items():
            group = monodromy_group(c)
            assert group.order == EXPECTED[family]["order"], family
            assert group.order == c.degree

    def test_solvability(self, exemplars):
        for family, c in exemplars.items():
            expected = family != DatumFamily.ICOSA_235
            assert is_solvable(monodromy_group(c)) is expected, family

    def test_prime_degree_transitive_is_primitive(self, exemplars):
        for family, c in exemplars.items():
            degree = c.degree
            if degree < 2 or any(degree % q == 0 for q in range(2, degree)):
                continue
            assert block_systems(monodromy_group(c)) == []


class TestTorusParameters:
    @pytest.mark.parametrize("family,k", [
        (DatumFamily.TORUS_236, 6),
        (DatumFamily.TORUS_333, 3),
        (DatumFamily.TORUS_244, 4),
        (DatumFamily.TORUS_2222, 2),
    ])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_order_is_k_m_squared(self, family, k, m):
        c = exemplar(ExemplarSpec(family, m))
        assert c.degree == k * m * m
        assert is_galois(c)
        assert genus_rh(c) == 1
        datum, _ = branching_datum(c)
        assert classify_orders(datum.orders()).tag == family

    def test_torus244_m1_matches_cyclic(self):
        c = exemplar(ExemplarSpec(DatumFamily.TORUS_244, 1))
        assert c.degree == 4
        datum, _ = branching_datum(c)
        assert datum.orders() == (2, 4, 4)

    def test_torus2222_m1_is_degree_two(self):
        c = exemplar(ExemplarSpec(DatumFamily.TORUS_2222, 1))
        assert c.degree == 2
        _, passport = branching_datum(c)
        assert passport == [(2,)] * 4


class TestCyclicAndDihedralParams:
    @pytest.mark.parametrize("n", [1, 2, 3, 8])
    def test_power_nn(self, n):
        c = exemplar(ExemplarSpec(DatumFamily.POWER_NN, n))
        assert c.degree == n
        assert is_galois(c)
        if n >= 2:
            datum, _ = branching_datum(c)
            assert datum.orders() == (n, n)

    @pytest.mark.parametrize("n", [2, 3, 4, 7])
    def test_dihedral(self, n):
        c = exemplar(ExemplarSpec(DatumFamily.DIHEDRAL_22N, n))
        assert c.degree == 2 * n
        assert is_galois(c)
        datum, _ = branching_datum(c)
        assert datum.orders() == (2, 2, n) if n > 2 else (2, 2, 2)
        assert genus_rh(c) == 0

    def test_dihedral3_spec_values(self):
        c = exemplar(ExemplarSpec(DatumFamily.DIHEDRAL_22N, 3))
        datum, _ = branching_datum(c)
        assert c.degree == 6
        assert datum.orders() == (2, 2, 3)
        assert genus_rh(c) == 0

    def test_other_family_rejected(self):
        with pytest.raises(ValueError):
            ExemplarSpec(DatumFamily.OTHER, 1)


class TestSphereDomination:
    """Random subject constellations are dominated by the family exemplar."""

    def test_power_family(self):
        r = rng()
        for n in (4, 6):
            ex = exemplar(ExemplarSpec(DatumFamily.POWER_NN, n))
            for degree in (2, 3, 4, 6):
                if n % degree != 0:
                    continue
                c = random_subject_constellation(r, (n, n), degree)
                if c is None:
                    continue
                assert dominates(ex, c)

    def test_dihedral_family(self):
        r = rng()
        ex = exemplar(ExemplarSpec(DatumFamily.DIHEDRAL_22N, 3))
        found = 0
        for degree in (2, 3, 6):
            c = random_subject_constellation(r, (2, 2, 3), degree)
            if c is None:
                continue
            found += 1
            assert dominates(ex, c)
        assert found >= 2

    def test_tetra_family(self):
        r = rng()
        ex = exemplar(ExemplarSpec(DatumFamily.TETRA_233, 1))
        found = 0
        for degree in (4, 6, 12):
            for _ in range(3):
                c = random_subject_constellation(r, (2, 3, 3), degree)
                if c is None:
                    continue
                found += 1
                assert dominates(ex, c)
        assert found >= 2
