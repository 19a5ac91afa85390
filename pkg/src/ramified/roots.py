"""Numeric roots of exact polynomials with exact multiplicity structure.

Multiplicities come from the exact squarefree decomposition, so repeated
roots are never inferred from floating-point clustering; the numeric work
only ever locates simple roots of squarefree factors, which is well
conditioned.
"""
from __future__ import annotations

import numpy as np

from .poly import ExactPolynomial


def newton_polish(p: ExactPolynomial, x: complex, iterations: int = 6) -> complex:
    dp = p.derivative()
    for _ in range(iterations):
        d = dp.eval_complex(x)
        if abs(d) < 1e-300:
            break
        x = x - p.eval_complex(x) / d
    return x


def squarefree_roots(p: ExactPolynomial) -> list[complex]:
    """Roots of a squarefree polynomial, Newton-polished."""
    if p.degree < 1:
        return []
    if p.degree == 1:
        return [complex(-p.coeffs[0] / p.coeffs[1])]
    raw = np.roots(p.float_coeffs_desc())
    return [newton_polish(p, complex(r)) for r in raw]


def structured_roots(p: ExactPolynomial) -> list[tuple[complex, int]]:
    """All roots as (value, multiplicity), multiplicities exact."""
    out = []
    for factor, multiplicity in p.squarefree_decomposition():
        for root in squarefree_roots(factor):
            out.append((root, multiplicity))
    return out


def residual_scale(p: ExactPolynomial, x: complex) -> float:
    """Natural size of p near x, for relative residual tests."""
    return p.max_abs_coeff() * max(1.0, abs(x)) ** max(p.degree, 1)
