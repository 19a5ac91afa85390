from fractions import Fraction

import pytest

from ramified.poly import ExactPolynomial, poly_from

Z = ExactPolynomial.identity()


class TestArithmetic:
    def test_add_mul(self):
        p = (Z + 1) * (Z - 1)
        assert p == Z**2 - 1

    def test_divmod_exact(self):
        p = (Z**2 - 1) * (Z**2 - 4) + (Z + 3)
        q, r = p.divmod(Z**2 - 1)
        assert q * (Z**2 - 1) + r == p
        assert r == Z + 3

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            (Z + 1).divmod(ExactPolynomial.zero())

    def test_degree_and_leading(self):
        assert (3 * Z**4).degree == 4
        assert (3 * Z**4).leading == 3
        assert ExactPolynomial.zero().degree == -1

    def test_evaluation_exact_and_complex(self):
        p = poly_from([1, 0, 1])
        assert p(Fraction(1, 2)) == Fraction(5, 4)
        assert abs(p(1j)) < 1e-15


class TestComposition:
    def test_compose(self):
        assert (Z**2).compose(Z**3) == Z**6
        assert (Z**2 + 1).compose(Z - 1) == Z**2 - 2 * Z + 2

    def test_shift_scale(self):
        assert (Z**2).shift(1) == Z**2 + 2 * Z + 1
        assert (Z**2).scale_arg(Fraction(1, 2)) == poly_from([0, 0, Fraction(1, 4)])


class TestStructure:
    def test_gcd(self):
        p = (Z - 1) * (Z - 2)
        q = (Z - 1) * (Z + 5)
        assert p.gcd(q) == Z - 1

    def test_squarefree_decomposition(self):
        p = Z * (Z - 1) ** 2 * (Z + 2) ** 2
        parts = p.squarefree_decomposition()
        assert [(f.degree, m) for f, m in parts] == [(1, 1), (2, 2)]
        rebuilt = ExactPolynomial.constant(p.leading)
        for f, m in parts:
            rebuilt = rebuilt * f**m
        assert rebuilt == p

    def test_squarefree_of_squarefree(self):
        p = (Z - 1) * (Z - 2) * (Z + 7)
        assert [(f.degree, m) for f, m in p.squarefree_decomposition()] == [(3, 1)]

    def test_power_decomposition(self):
        p = (Z - 3) ** 5
        assert [(f.degree, m) for f, m in p.squarefree_decomposition()] == [(1, 5)]

    def test_gap_multiplicities(self):
        p = (Z - 1) * (Z + 1) ** 3
        assert [(f.degree, m) for f, m in p.squarefree_decomposition()] == [
            (1, 1),
            (1, 3),
        ]
