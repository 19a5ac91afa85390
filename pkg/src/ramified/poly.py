"""Exact univariate polynomials over the rationals.

Coefficients are stored low-to-high as Fractions.  All construction and
structural computation (composition, division, gcd, squarefree split) is
exact; floating point appears only in numeric evaluation helpers.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Sequence

Coeff = Fraction | int


def _normalize(coeffs: Iterable[Coeff]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (Fraction(0),)


@dataclasses.dataclass(frozen=True)
class ExactPolynomial:
    """A polynomial with rational coefficients, low degree first.

    >>> p = ExactPolynomial((1, 0, 1))    # 1 + z^2
    >>> p(2)
    Fraction(5, 1)
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    # -- construction -----------------------------------------------------
    @staticmethod
    def zero() -> "ExactPolynomial":
        return ExactPolynomial((0,))

    @staticmethod
    def constant(c: Coeff) -> "ExactPolynomial":
        return ExactPolynomial((c,))

    @staticmethod
    def identity() -> "ExactPolynomial":
        return ExactPolynomial((0, 1))

    @staticmethod
    def monomial(degree: int, c: Coeff = 1) -> "ExactPolynomial":
        return ExactPolynomial((0,) * degree + (c,))

    # -- structure ---------------------------------------------------------
    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1  # the zero polynomial
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.degree == -1

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "ExactPolynomial":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "ExactPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ExactPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "ExactPolynomial":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ExactPolynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = ExactPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "ExactPolynomial") -> tuple["ExactPolynomial", "ExactPolynomial"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(1, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            factor = rem[i] / lead
            quot[i - d] = factor
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= factor * c
        return ExactPolynomial(quot), ExactPolynomial(rem)

    def __floordiv__(self, other) -> "ExactPolynomial":
        return self.divmod(_coerce(other))[0]

    def __mod__(self, other) -> "ExactPolynomial":
        return self.divmod(_coerce(other))[1]

    # -- calculus and composition ---------------------------------------------
    def derivative(self) -> "ExactPolynomial":
        if self.degree < 1:
            return ExactPolynomial.zero()
        return ExactPolynomial(
            tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)
        )

    def compose(self, inner: "ExactPolynomial") -> "ExactPolynomial":
        """Horner composition self(inner)."""
        inner = _coerce(inner)
        result = ExactPolynomial.zero()
        for c in reversed(self.coeffs):
            result = result * inner + ExactPolynomial.constant(c)
        return result

    def shift(self, t: Coeff) -> "ExactPolynomial":
        """self(z + t)."""
        return self.compose(ExactPolynomial((Fraction(t), Fraction(1))))

    def scale_arg(self, a: Coeff) -> "ExactPolynomial":
        """self(a * z)."""
        return ExactPolynomial(
            tuple(c * Fraction(a) ** i for i, c in enumerate(self.coeffs))
        )

    def monic(self) -> "ExactPolynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        lead = self.leading
        return ExactPolynomial(tuple(c / lead for c in self.coeffs))

    # -- evaluation -------------------------------------------------------------
    def __call__(self, x):
        if isinstance(x, (complex, float)):
            return self.eval_complex(complex(x))
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def float_coeffs_desc(self) -> list[float]:
        """High-to-low float coefficients (numpy root-finder layout)."""
        return [float(c) for c in reversed(self.coeffs)]

    def max_abs_coeff(self) -> float:
        return max(abs(float(c)) for c in self.coeffs)

    # -- exact structure ------------------------------------------------------
    def gcd(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self, _coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def squarefree_decomposition(self) -> list[tuple["ExactPolynomial", int]]:
        """Yun-style split: [(g_i, i)] with self = lc * prod g_i^i, g_i squarefree.

        Factors with g_i constant are omitted; multiplicity structure of the
        roots is exact, which is how repeated roots are counted without any
        numeric clustering.
        """
        if self.degree < 1:
            return []
        p = self.monic()
        d = p.derivative()
        a = p.gcd(d)
        out: list[tuple[ExactPolynomial, int]] = []
        i = 1
        b = (p // a).monic() if a.degree > 0 else p
        c = (d // a) if a.degree > 0 else d
        while b.degree > 0:
            z = c - b.derivative()
            g = b.gcd(z) if not z.is_zero() else b
            if g.degree > 0:
                out.append((g, i))
            b_next = (b // g).monic() if g.degree > 0 else b
            c = (z // g) if g.degree > 0 else z
            b = b_next
            i += 1
            if z.is_zero():
                break
        return out

    def root_multiplicities_total(self) -> int:
        return sum(g.degree * m for g, m in self.squarefree_decomposition())

    # -- display ---------------------------------------------------------------
    def __repr__(self) -> str:
        if self.is_zero():
            return "ExactPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
        return "ExactPolynomial(" + " + ".join(terms) + ")"


def _coerce(value) -> ExactPolynomial:
    if isinstance(value, ExactPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactPolynomial.constant(value)
    raise TypeError(f"cannot coerce {type(value)} to ExactPolynomial")


def poly_from(coeffs: Sequence[Coeff]) -> ExactPolynomial:
    """Low-to-high coefficient list to polynomial."""
    return ExactPolynomial(tuple(Fraction(c) for c in coeffs))
