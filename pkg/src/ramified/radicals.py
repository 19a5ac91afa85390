"""Radical expression trees, multivalued evaluation, and radical solvers.

A RadicalExpr is a tree over rational constants, the imaginary unit,
arithmetic nodes and k-th-root nodes.  A Root node denotes the full set of
k complex k-th roots; evaluation picks one branch per Root node and runs
over the cartesian product of all choices, so an expression with root
indices k_1, ..., k_r takes at most k_1 * ... * k_r values.  Solvers emit
trees whose value sets contain the true answers along with spurious
branches; callers filter by a round-trip residual, which is simpler and
more testable than coupling branch choices symbolically.

Cubics are solved by shape, not by a memorized formula: after centering,
a cubic with one finite critical value is a scaled cube, and one with two
finite critical values is a linear conjugate of the degree-3 Chebyshev
polynomial, so its inverse is the nested-radical Chebyshev inversion.
"""
from __future__ import annotations

import cmath
import dataclasses
import math
from fractions import Fraction
from itertools import product as iproduct

from .errors import DegenerateLeading, DivisionByZero
from .poly import ExactPolynomial, poly_from
from .roots import newton_polish, structured_roots

# ---------------------------------------------------------------------------
# expression trees


class RadicalExpr:
    """Base node; subclasses are frozen dataclasses."""

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def root(self, index: int) -> "Root":
        return Root(index, self)


@dataclasses.dataclass(frozen=True)
class RationalConst(RadicalExpr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclasses.dataclass(frozen=True)
class ImaginaryUnit(RadicalExpr):
    pass


@dataclasses.dataclass(frozen=True)
class Add(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr


@dataclasses.dataclass(frozen=True)
class Sub(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr


@dataclasses.dataclass(frozen=True)
class Mul(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr


@dataclasses.dataclass(frozen=True)
class Div(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr


@dataclasses.dataclass(frozen=True)
class Neg(RadicalExpr):
    child: RadicalExpr


@dataclasses.dataclass(frozen=True)
class Root(RadicalExpr):
    index: int
    child: RadicalExpr

    def __post_init__(self):
        if self.index < 2:
            raise ValueError("root index must be at least 2")


@dataclasses.dataclass(frozen=True)
class ComplexLit(RadicalExpr):
    """Literal complex value; internal staging aid, not part of the JSON grammar."""

    value: complex


def as_expr(value) -> RadicalExpr:
    if isinstance(value, RadicalExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalConst(Fraction(value))
    raise TypeError(f"cannot convert {type(value)} to RadicalExpr")


def expr_to_json(expr: RadicalExpr) -> dict:
    if isinstance(expr, RationalConst):
        return {
            "kind": "rational",
            "num": expr.value.numerator,
            "den": expr.value.denominator,
        }
    if isinstance(expr, ImaginaryUnit):
        return {"kind": "i"}
    if isinstance(expr, Neg):
        return {"kind": "neg", "arg": expr_to_json(expr.child)}
    if isinstance(expr, Root):
        return {"kind": "root", "index": expr.index, "arg": expr_to_json(expr.child)}
    for cls, kind in ((Add, "add"), (Sub, "sub"), (Mul, "mul"), (Div, "div")):
        if isinstance(expr, cls):
            return {
                "kind": kind,
                "left": expr_to_json(expr.left),
                "right": expr_to_json(expr.right),
            }
    raise TypeError(f"cannot serialize {type(expr)}")


def expr_from_json(data: dict) -> RadicalExpr:
    kind = data["kind"]
    if kind == "rational":
        return RationalConst(Fraction(data["num"], data["den"]))
    if kind == "i":
        return ImaginaryUnit()
    if kind == "neg":
        return Neg(expr_from_json(data["arg"]))
    if kind == "root":
        return Root(data["index"], expr_from_json(data["arg"]))
    pair = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}
    if kind in pair:
        return pair[kind](expr_from_json(data["left"]), expr_from_json(data["right"]))
    raise ValueError(f"unknown node kind {kind!r}")


# ---------------------------------------------------------------------------
# multivalued evaluation

_ZERO_DEN = 1e-14
DEFAULT_BRANCH_LIMIT = 2_000_000


class _BranchDead(Exception):
    pass


def _root_ids_under(expr: RadicalExpr) -> dict[int, tuple]:
    """For each node id, the unique Root nodes (by id) in its subtree."""
    table: dict[int, tuple] = {}

    def walk(node: RadicalExpr) -> tuple:
        key = id(node)
        if key in table:
            return table[key]
        collected: list = []
        children = []
        if isinstance(node, (Add, Sub, Mul, Div)):
            children = [node.left, node.right]
        elif isinstance(node, (Neg, Root)):
            children = [node.child]
        for child in children:
            for item in walk(child):
                if all(item[0] is not existing[0] for existing in collected):
                    collected.append(item)
        if isinstance(node, Root):
            collected.append((node, node.index))
        result = tuple(collected)
        table[key] = result
        return result

    walk(expr)
    return table


def eval_multi(
    expr: RadicalExpr,
    tol: float = 1e-9,
    branch_limit: int = DEFAULT_BRANCH_LIMIT,
) -> list[complex]:
    """All values of the expression, one branch choice per Root node.

    Shared subtrees evaluate consistently within a branch assignment.
    Branches that divide by zero are dropped; if every branch dies that way
    a DivisionByZero is raised.  Values closer than ``tol`` are merged.
    """
    table = _root_ids_under(expr)
    roots = table[id(expr)]
    total = 1
    for _, index in roots:
        total *= index
        if total > branch_limit:
            raise RuntimeError(
                f"branch product exceeds limit {branch_limit}; evaluate in stages"
            )
    root_pos = {id(node): i for i, (node, _) in enumerate(roots)}
    memo: dict[tuple, complex] = {}
    dropped = 0
    values: list[complex] = []

    def ev(node: RadicalExpr, assignment: tuple[int, ...]) -> complex:
        key_roots = table[id(node)]
        key = (id(node), tuple(assignment[root_pos[id(r)]] for r, _ in key_roots))
        if key in memo:
            result = memo[key]
            if result is None:
                raise _BranchDead()
            return result
        try:
            value = _ev_inner(node, assignment)
        except _BranchDead:
            memo[key] = None
            raise
        memo[key] = value
        return value

    def _ev_inner(node: RadicalExpr, assignment) -> complex:
        if isinstance(node, RationalConst):
            return complex(node.value)
        if isinstance(node, ImaginaryUnit):
            return 1j
        if isinstance(node, ComplexLit):
            return node.value
        if isinstance(node, Neg):
            return -ev(node.child, assignment)
        if isinstance(node, Add):
            return ev(node.left, assignment) + ev(node.right, assignment)
        if isinstance(node, Sub):
            return ev(node.left, assignment) - ev(node.right, assignment)
        if isinstance(node, Mul):
            return ev(node.left, assignment) * ev(node.right, assignment)
        if isinstance(node, Div):
            den = ev(node.right, assignment)
            if abs(den) < _ZERO_DEN:
                raise _BranchDead()
            return ev(node.left, assignment) / den
        if isinstance(node, Root):
            base = ev(node.child, assignment)
            k = node.index
            if base == 0:
                return 0j
            r = abs(base) ** (1.0 / k)
            theta = cmath.phase(base)
            choice = assignment[root_pos[id(node)]]
            return r * cmath.exp(1j * (theta + 2 * math.pi * choice) / k)
        raise TypeError(f"cannot evaluate {type(node)}")

    for assignment in iproduct(*(range(index) for _, index in roots)):
        try:
            values.append(ev(expr, assignment))
        except _BranchDead:
            dropped += 1
    if not values:
        if dropped:
            raise DivisionByZero("every branch hit a zero denominator")
        raise RuntimeError("expression produced no values")
    return dedup_complex(values, tol)


def dedup_complex(values, tol: float) -> list[complex]:
    """Merge values closer than tol, bucketed so it stays near linear."""
    if tol <= 0:
        return list(values)
    buckets: dict[tuple[int, int], list[complex]] = {}
    kept: list[complex] = []
    for v in values:
        bx, by = round(v.real / tol), round(v.imag / tol)
        hit = False
        for cell in ((bx + dx, by + dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)):
            for w in buckets.get(cell, ()):
                if abs(v - w) <= tol:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            buckets.setdefault((bx, by), []).append(v)
            kept.append(v)
    return kept


# ---------------------------------------------------------------------------
# Chebyshev polynomials and the basic inversions

_CHEB_CACHE: dict[int, ExactPolynomial] = {}


def chebyshev(n: int) -> ExactPolynomial:
    """P_n with cos(n x) = P_n(cos x), by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n not in _CHEB_CACHE:
        prev, cur = poly_from([1]), poly_from([0, 1])
        _CHEB_CACHE[0], _CHEB_CACHE[1] = prev, cur
        two_z = poly_from([0, 2])
        for k in range(2, n + 1):
            prev, cur = cur, two_z * cur - prev
            _CHEB_CACHE[k] = cur
    return _CHEB_CACHE[n]


def invert_power(n: int, w) -> RadicalExpr:
    """All n-th roots of w: the inverse of z -> z^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    w = as_expr(w)
    return w if n == 1 else Root(n, w)


def invert_chebyshev(n: int, w) -> RadicalExpr:
    """The nested-radical inverse of w = P_n(z).

    Both square-root occurrences share one node, so every branch uses a
    consistent value of sqrt(1 - w^2).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    w = as_expr(w)
    if n == 1:
        return w
    i = ImaginaryUnit()
    sq = Root(2, 1 - w * w)
    return (Root(n, w + i * sq) + Root(n, w - i * sq)) / 2


# ---------------------------------------------------------------------------
# cubics by critical values

ONE = RationalConst(Fraction(1))


@dataclasses.dataclass(frozen=True)
class CubicShape:
    """Exact normal form of a cubic: scaled cube or Chebyshev conjugate.

    Cube case: p(z) = a * (z - beta)^3 + gamma.
    Chebyshev case: p(z) = sqrt(d_sq) * P_3(alpha * (z + shift)) + offset
    with alpha^2 = alpha_sq; d_sq and alpha_sq are exact rationals even when
    the critical values themselves are irrational.
    """

    kind: str  # "cube" | "chebyshev"
    leading: Fraction
    beta: Fraction | None = None
    gamma: Fraction | None = None
    shift: Fraction | None = None
    offset: Fraction | None = None
    d_sq: Fraction | None = None
    alpha_sq: Fraction | None = None

    def inverse_expr(self, w) -> RadicalExpr:
        w = as_expr(w)
        if self.kind == "cube":
            return as_expr(self.beta) + Root(3, (w - as_expr(self.gamma)) / self.leading)
        sqrt_d = Root(2, as_expr(self.d_sq))
        alpha = Root(2, as_expr(self.alpha_sq))
        inner = invert_chebyshev(3, (w - as_expr(self.offset)) / sqrt_d)
        return inner / alpha - as_expr(self.shift)


def cubic_shape(p: ExactPolynomial) -> CubicShape:
    """Classify a cubic by its finite critical values, exactly."""
    if p.degree != 3:
        raise DegenerateLeading(f"expected degree 3, got {p.degree}")
    a3, a2 = p.coefficient(3), p.coefficient(2)
    shift = a2 / (3 * a3)
    centered = p.shift(-shift)  # kills the z^2 term
    q1, q0 = centered.coefficient(1), centered.coefficient(0)
    if q1 == 0:
        # single finite critical value: a cube of a linear polynomial
        return CubicShape("cube", leading=a3, beta=-shift, gamma=q0)
    # two finite critical values: a Chebyshev conjugate.  Matching
    # sqrt(D) * (4 a^3 z^3 - 3 a z) + s against a3 z^3 + q1 z + q0 gives
    # alpha^2 and D rationally even though alpha and sqrt(D) need not be.
    alpha_sq = Fraction(-3) * a3 / (4 * q1)
    d_sq = q1 * q1 / (9 * alpha_sq)
    return CubicShape(
        "chebyshev",
        leading=a3,
        shift=shift,
        offset=q0,
        d_sq=d_sq,
        alpha_sq=alpha_sq,
    )


def cubic_inverse_expr(p: ExactPolynomial, w) -> RadicalExpr:
    """Radical expression whose value set contains all roots of p(z) = w."""
    return cubic_shape(p).inverse_expr(w)


def _filtered_tree_roots(
    p: ExactPolynomial, v: Fraction, expr: RadicalExpr
) -> list[tuple[complex, int]]:
    """Numeric roots of p = v from the tree, with exact multiplicities."""
    target = p - ExactPolynomial.constant(v)
    structure = target.squarefree_decomposition()
    candidates = eval_multi(expr, tol=1e-12)
    out: list[tuple[complex, int]] = []
    for factor, mult in structure:
        polished = [newton_polish(factor, c) for c in candidates]
        good = [
            x
            for x in polished
            if abs(factor.eval_complex(x))
            <= 1e-9 * max(1.0, factor.max_abs_coeff()) * max(1.0, abs(x)) ** factor.degree
        ]
        good = dedup_complex(good, 1e-8)
        if len(good) != factor.degree:
            # numeric safety net: locate this factor's simple roots directly
            from .roots import squarefree_roots

            good = squarefree_roots(factor)
        for root in good:
            out.append((root, mult))
    return out


def solve_cubic(
    p: ExactPolynomial, v: Fraction | int = 0
) -> list[tuple[RadicalExpr, complex]]:
    """Roots of p(z) = v with multiplicity, as (radical expression, value).

    The expression is the shape-derived inverse evaluated at w = v; the
    numeric values are branch evaluations polished by Newton, with exact
    multiplicities from the squarefree split of p - v.
    """
    shape = cubic_shape(p)
    v = Fraction(v)
    expr = shape.inverse_expr(RationalConst(v))
    out = []
    for root, mult in _filtered_tree_roots(p, v, expr):
        out.extend([(expr, root)] * mult)
    return out


# ---------------------------------------------------------------------------
# symbolic cubic and quartic templates for chained inversion

def cardano_expr(b2, b1, b0) -> RadicalExpr:
    """Roots of the monic cubic m^3 + b2 m^2 + b1 m + b0, as one multivalued tree.

    Used when a coefficient is itself a radical expression, where the exact
    shape analysis above cannot run.  Spurious cube-root pairings are left
    to downstream round-trip filtering.
    """
    b2, b1, b0 = as_expr(b2), as_expr(b1), as_expr(b0)
    third = RationalConst(Fraction(1, 3))
    p = b1 - b2 * b2 * third
    q = (
        b2 * b2 * b2 * RationalConst(Fraction(2, 27))
        - b2 * b1 * third
        + b0
    )
    half_q = q * RationalConst(Fraction(1, 2))
    delta = half_q * half_q + p * p * p * RationalConst(Fraction(1, 27))
    sq = Root(2, delta)
    u = Root(3, -half_q + sq)
    vv = Root(3, -half_q - sq)
    return u + vv - b2 * third


def quartic_inverse_expr(g: ExactPolynomial, target) -> RadicalExpr:
    """Roots of g(z) = target for a rational quartic g and expression target.

    Depresses the quartic (rational shift), solves the resolvent cubic with
    the symbolic template, and assembles the two quadratics; the value set
    contains all four solutions for every value of the target expression.
    """
    if g.degree != 4:
        raise DegenerateLeading(f"expected degree 4, got {g.degree}")
    target = as_expr(target)
    a = g.coefficient(4)
    shift = g.coefficient(3) / (4 * a)
    dep = g.shift(-shift).monic()
    p_c = dep.coefficient(2)
    q_c = dep.coefficient(1)
    r0 = dep.coefficient(0)
    r_expr = as_expr(r0) - target / as_expr(a)
    if q_c == 0:
        # biquadratic: t^4 + p t^2 + r
        inner = Root(2, as_expr(p_c * p_c) - RationalConst(4) * r_expr)
        y = (inner - as_expr(p_c)) / 2
        return Root(2, y) - as_expr(shift)
    # resolvent: m^3 + p m^2 + (p^2/4 - r) m - q^2/8
    m = cardano_expr(
        as_expr(p_c),
        as_expr(p_c * p_c / 4) - r_expr,
        as_expr(-q_c * q_c / 8),
    )
    s = Root(2, RationalConst(2) * m)
    inner = Root(
        2,
        as_expr(-2 * p_c) - RationalConst(2) * m - as_expr(2 * q_c) / s,
    )
    return (s + inner) / 2 - as_expr(shift)
