"""Quartic solving through the pencil of two conics.

A quartic a x^4 + b x^3 + c x^2 + d x + e vanishes exactly where the conics
Q1(x, y) = a y^2 + b x y + c x^2 + d x + e and Q2(x, y) = y - x^2 meet.  The
pencil Q1 + lambda Q2 contains exactly three singular members, located by a
cubic in lambda (the determinant of the pencil matrix); each singular conic
is a pair of lines through the four intersection points, so the roots drop
out of line-line intersections.

Degenerate pencils (repeated singular conics) fall back to perturbation-free
special cases: exact biquadratic and perfect-power forms, then intersecting
a single singular conic's lines with the parabola, which covers root
patterns like (3,1) where only one line pair exists.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction

from .errors import DegenerateLeading, DegenerateQuartic, NotSingular
from .poly import ExactPolynomial
from .radicals import (
    RadicalExpr,
    RationalConst,
    Root,
    as_expr,
    cubic_inverse_expr,
    dedup_complex,
    solve_cubic,
)
from .roots import newton_polish, residual_scale

Matrix3 = tuple[tuple[Fraction, ...], ...]


@dataclasses.dataclass(frozen=True)
class Conic:
    """Symmetric 3x3 rational matrix over projective coordinates (x, y, 1)."""

    matrix: Matrix3

    def __post_init__(self):
        m = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("conic matrix must be 3x3")
        for i in range(3):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("conic matrix must be symmetric")

    def evaluate(self, x, y):
        v = (x, y, 1)
        return sum(self.matrix[i][j] * v[i] * v[j] for i in range(3) for j in range(3))

    def det(self) -> Fraction:
        m = self.matrix
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def complex_matrix(self) -> list[list[complex]]:
        return [[complex(v) for v in row] for row in self.matrix]


def build_pencil(p: ExactPolynomial) -> tuple[Conic, Conic, ExactPolynomial]:
    """Conic pair for the quartic plus det(M1 + lambda M2) as a cubic in lambda."""
    if p.degree != 4:
        raise DegenerateLeading(f"expected degree 4, got {p.degree}")
    e, d, c, b, a = (p.coefficient(k) for k in range(5))
    half = Fraction(1, 2)
    m1 = Conic((
        (c, b * half, d * half),
        (b * half, a, Fraction(0)),
        (d * half, Fraction(0), e),
    ))
    m2 = Conic((
        (Fraction(-1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), half),
        (Fraction(0), half, Fraction(0)),
    ))
    # det(M1 + lambda M2) expanded exactly with degree-1 polynomial entries
    lam = ExactPolynomial.identity()
    entries = [
        [
            ExactPolynomial.constant(m1.matrix[i][j]) + lam * m2.matrix[i][j]
            for j in range(3)
        ]
        for i in range(3)
    ]
    det = (
        entries[0][0] * (entries[1][1] * entries[2][2] - entries[1][2] * entries[2][1])
        - entries[0][1] * (entries[1][0] * entries[2][2] - entries[1][2] * entries[2][0])
        + entries[0][2] * (entries[1][0] * entries[2][1] - entries[1][1] * entries[2][0])
    )
    return m1, m2, det


# ---------------------------------------------------------------------------
# numeric line splitting

_Line = tuple[complex, complex, complex]  # u x + v y + w = 0


def _split_lines_numeric(m: list[list[complex]], scale: float) -> tuple[_Line, _Line]:
    """Split a singular conic matrix into two lines.

    Treats the form as a quadratic in y when the y^2 entry is usable,
    otherwise in x, otherwise as a bilinear xy form.  The discriminant of a
    singular conic is a perfect square, so its square root is affine.
    """
    tiny = 1e-12 * (1.0 + scale)
    q11, q12, q13 = m[0][0], m[0][1], m[0][2]
    q22, q23 = m[1][1], m[1][2]
    q33 = m[2][2]
    if abs(q22) > tiny:
        # q22 y^2 + 2(q12 x + q23) y + (q11 x^2 + 2 q13 x + q33)
        A = q12 * q12 - q22 * q11
        B = 2 * (q12 * q23 - q22 * q13)
        C = q23 * q23 - q22 * q33
        alpha, beta = _affine_sqrt(A, B, C, tiny)
        # lines: q22 y + (q12 -+ alpha) x + (q23 -+ beta) = 0
        return (
            (q12 - alpha, q22, q23 - beta),
            (q12 + alpha, q22, q23 + beta),
        )
    if abs(q11) > tiny:
        A = q12 * q12 - q11 * q22
        B = 2 * (q12 * q13 - q11 * q23)
        C = q13 * q13 - q11 * q33
        alpha, beta = _affine_sqrt(A, B, C, tiny)
        return (
            (q11, q12 - alpha, q13 - beta),
            (q11, q12 + alpha, q13 + beta),
        )
    if abs(q12) > tiny:
        # 2 q12 x y + 2 q13 x + 2 q23 y + q33: lines x = -q23/q12, y = -q13/q12
        return ((q12, 0j, q23), (0j, q12, q13))
    raise DegenerateQuartic("conic has no quadratic part to split")


def _affine_sqrt(A: complex, B: complex, C: complex, tiny: float):
    """(alpha, beta) with (alpha x + beta)^2 = A x^2 + B x + C, A x^2+Bx+C a square."""
    if abs(A) > tiny:
        alpha = A ** 0.5
        return alpha, B / (2 * alpha)
    return 0j, C ** 0.5


def split_singular_conic(matrix) -> tuple[_Line, _Line]:
    """Factor a rank <= 2 conic into two lines (possibly complex).

    Accepts a Conic or any 3x3 matrix of numbers.  Raises NotSingular when
    the determinant is not small relative to the matrix scale.
    """
    if isinstance(matrix, Conic):
        m = matrix.complex_matrix()
    else:
        m = [[complex(v) for v in row] for row in matrix]
    norm = max(abs(v) for row in m for v in row)
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    if abs(det) > 1e-10 * (1.0 + norm**3):
        raise NotSingular(f"determinant {abs(det):.3e} too large for scale {norm:.3e}")
    return _split_lines_numeric(m, norm)


def _cross(l1: _Line, l2: _Line) -> tuple[complex, complex, complex]:
    u1, v1, w1 = l1
    u2, v2, w2 = l2
    return (
        v1 * w2 - w1 * v2,
        w1 * u2 - u1 * w2,
        u1 * v2 - v1 * u2,
    )


# ---------------------------------------------------------------------------
# the solver

def _pencil_matrix_at(m1: Conic, m2: Conic, lam: complex) -> list[list[complex]]:
    a = m1.complex_matrix()
    b = m2.complex_matrix()
    return [[a[i][j] + lam * b[i][j] for j in range(3)] for i in range(3)]


def _match_structure(
    p: ExactPolynomial, xs: list[complex]
) -> list[tuple[complex, int]] | None:
    """Assign the candidate roots to the exact multiplicity structure of p.

    Candidates are matched to a squarefree factor only when they already sit
    near it (loose residual), then Newton-polished on that factor; the
    pencil supplies the locations, polishing just removes float noise.
    """
    out: list[tuple[complex, int]] = []
    for factor, mult in p.squarefree_decomposition():
        seeds = [
            x
            for x in xs
            if abs(factor.eval_complex(x)) <= 1e-4 * residual_scale(factor, x)
        ]
        polished = dedup_complex([newton_polish(factor, x) for x in seeds], 1e-8)
        good = [
            x
            for x in polished
            if abs(factor.eval_complex(x)) <= 1e-8 * residual_scale(factor, x)
        ]
        if len(good) != factor.degree:
            return None
        out.extend((x, mult) for x in good)
    return out


def _verify(p: ExactPolynomial, roots: list[tuple[complex, int]]) -> bool:
    total = sum(m for _, m in roots)
    return total == p.degree and all(
        abs(p.eval_complex(x)) <= 1e-8 * residual_scale(p, x) for x, _ in roots
    )


def _radical_from_two_conics(
    m1: Conic, m2: Conic, pencil_cubic: ExactPolynomial
) -> RadicalExpr:
    """x-coordinate tree: intersect line pairs of two singular pencil members.

    Two structurally independent copies of the singular-parameter expression
    feed two line templates; every branch assignment picks one line from
    each, and the value set sweeps all pairwise intersections, the four
    roots among them.
    """
    lam_a = cubic_inverse_expr(pencil_cubic, RationalConst(Fraction(0)))
    lam_b = cubic_inverse_expr(pencil_cubic, RationalConst(Fraction(0)))
    ua, va, wa = _symbolic_line(m1, m2, lam_a)
    ub, vb, wb = _symbolic_line(m1, m2, lam_b)
    x_num = va * wb - wa * vb
    x_den = ua * vb - va * ub
    return x_num / x_den


def _symbolic_line(
    m1: Conic, m2: Conic, lam: RadicalExpr
) -> tuple[RadicalExpr, RadicalExpr, RadicalExpr]:
    """One line of the singular conic at a symbolic pencil parameter.

    The square root of the y-discriminant is multivalued, so the single
    template covers both lines of the pair.
    """

    def entry(i, j):
        return as_expr(m1.matrix[i][j]) + lam * as_expr(m2.matrix[i][j])

    q11, q12, q13 = entry(0, 0), entry(0, 1), entry(0, 2)
    q22, q23 = entry(1, 1), entry(1, 2)
    q33 = entry(2, 2)
    A = q12 * q12 - q22 * q11
    B = (q12 * q23 - q22 * q13) * 2
    C = q23 * q23 - q22 * q33
    alpha = Root(2, A)
    beta = B / (alpha * 2)
    return (q12 - alpha, q22, q23 - beta)


def solve_quartic_pencil(
    p: ExactPolynomial, radical: bool = False
) -> list[tuple[RadicalExpr | None, complex]]:
    """All four roots of the quartic, with multiplicity, via the conic pencil.

    Returns (expression, root) pairs; the expression is a multivalued tree
    whose value set contains the roots (None unless ``radical``).  Repeated
    singular conics trigger exact special-case handling instead of
    perturbation.
    """
    m1, m2, pencil_cubic = build_pencil(p)
    roots = _generic_pencil_roots(p, m1, m2, pencil_cubic)
    expr: RadicalExpr | None = None
    if roots is None:
        roots, expr = _degenerate_quartic(p, m1, m2, pencil_cubic)
        if roots is None:
            raise DegenerateQuartic("no pencil route produced verified roots")
    elif radical:
        expr = _radical_from_two_conics(m1, m2, pencil_cubic)
    flat: list[tuple[RadicalExpr | None, complex]] = []
    for x, mult in roots:
        flat.extend([(expr if radical else None, x)] * mult)
    return flat


def _generic_pencil_roots(p, m1, m2, pencil_cubic):
    """Two distinct singular conics, four line-pair intersections."""
    lam_values = dedup_complex([r for _, r in solve_cubic(pencil_cubic)], 1e-7)
    if len(lam_values) < 2:
        return None
    # the two best-separated singular parameters
    best = max(
        ((la, lb) for i, la in enumerate(lam_values) for lb in lam_values[i + 1 :]),
        key=lambda pair: abs(pair[0] - pair[1]),
    )
    scale = p.max_abs_coeff()
    try:
        lines_a = _split_lines_numeric(_pencil_matrix_at(m1, m2, best[0]), scale)
        lines_b = _split_lines_numeric(_pencil_matrix_at(m1, m2, best[1]), scale)
    except DegenerateQuartic:
        return None
    xs = []
    for la in lines_a:
        for lb in lines_b:
            X, Y, W = _cross(la, lb)
            size = max(abs(X), abs(Y), abs(W))
            if size == 0 or abs(W) <= 1e-10 * size:
                continue  # intersection at infinity; not a finite root
            x, y = X / W, Y / W
            if abs(y - x * x) > 1e-6 * (1.0 + abs(x)) ** 2:
                continue  # not on the parabola
            xs.append(x)
    if len(xs) != 4:
        return None
    matched = _match_structure(p, xs)
    if matched is None or not _verify(p, matched):
        return None
    return matched


def _degenerate_quartic(p, m1, m2, pencil_cubic):
    """Exact special cases, then a single singular conic against the parabola."""
    a = p.coefficient(4)
    shift = p.coefficient(3) / (4 * a)
    depressed = p.shift(-shift)
    if depressed.coefficient(1) == 0 and depressed.coefficient(2) == 0:
        # perfect power: a (z + shift)^4 + u
        u = depressed.coefficient(0)
        expr = Root(2, Root(2, as_expr(-u / a))) - as_expr(shift)
        if u == 0:
            return [(complex(-shift), 4)], expr
        c = complex(-u / a)
        base = c ** 0.25
        roots = [(base * 1j**k - complex(shift), 1) for k in range(4)]
        return roots, expr
    if p.coefficient(3) == 0 and p.coefficient(1) == 0:
        # biquadratic: a y^2 + c y + e with y = x^2
        c2, e0 = p.coefficient(2), p.coefficient(0)
        inner = Root(2, as_expr(c2 * c2 - 4 * a * e0))
        y_expr = (inner - as_expr(c2)) / as_expr(2 * a)
        expr = Root(2, y_expr)
        disc = complex(c2 * c2 - 4 * a * e0) ** 0.5
        xs = []
        for sign in (1, -1):
            y = (-complex(c2) + sign * disc) / (2 * complex(a))
            xs.extend([y**0.5, -(y**0.5)])
        matched = _match_structure(p, xs)
        if matched is not None and _verify(p, matched):
            return matched, expr
    # single singular conic: intersect its two lines with y = x^2 directly
    lam_values = dedup_complex([r for _, r in solve_cubic(pencil_cubic)], 1e-7)
    scale = p.max_abs_coeff()
    for lam in lam_values:
        try:
            lines = _split_lines_numeric(_pencil_matrix_at(m1, m2, lam), scale)
        except DegenerateQuartic:
            continue
        xs = []
        for u, v, w in lines:
            # u x + v y + w = 0 on y = x^2: v x^2 + u x + w = 0
            size = max(abs(u), abs(v), abs(w))
            if abs(v) <= 1e-12 * size:
                if abs(u) > 1e-12 * size:
                    xs.append(-w / u)
                continue
            disc = (u * u - 4 * v * w) ** 0.5
            xs.extend([(-u + disc) / (2 * v), (-u - disc) / (2 * v)])
        matched = _match_structure(p, xs)
        if matched is not None and _verify(p, matched):
            lam_expr = cubic_inverse_expr(pencil_cubic, RationalConst(Fraction(0)))
            u_e, v_e, w_e = _symbolic_line(m1, m2, lam_expr)
            disc_e = Root(2, u_e * u_e - v_e * w_e * 4)
            expr = (disc_e - u_e) / (v_e * 2)
            return matched, expr
    return None, None
