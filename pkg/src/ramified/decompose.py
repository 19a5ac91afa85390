"""Polynomial decomposition and the invertibility-in-radicals verdict.

A polynomial is a composition of indecomposable factors; a factor obstructs
inversion in radicals unless, up to a linear change of variable on each
side, it is a power map, a Chebyshev polynomial, or has degree at most 4.
Factors are found by exact coefficient matching, classified through their
critical values, and inverted by chaining the radical solvers through the
linear witnesses.
"""
from __future__ import annotations

import cmath
import dataclasses
import enum
import math
from fractions import Fraction

import numpy as np

from .covering import BranchingDatum
from .errors import DegenerateLeading, DerivativeDegenerate, NotIndecomposable
from .perm import Permutation
from .poly import ExactPolynomial
from .radicals import (
    ComplexLit,
    RadicalExpr,
    RationalConst,
    Root,
    as_expr,
    chebyshev,
    cubic_shape,
    dedup_complex,
    eval_multi,
    invert_chebyshev,
    quartic_inverse_expr,
)
from .quartic import solve_quartic_pencil
from .roots import newton_polish, residual_scale, structured_roots


# ---------------------------------------------------------------------------
# critical data of polynomial maps

def critical_datum(p: ExactPolynomial, tol: float = 1e-8) -> BranchingDatum:
    """Branching datum of the polynomial map: critical values plus infinity.

    Critical points carry exact multiplicities (squarefree split of p');
    critical values are clustered numerically at relative tolerance ``tol``
    and labeled v1, v2, ... in lexicographic order, with "inf" of order
    deg(p) appended.  Rational-looking clusters are re-verified exactly
    through gcd(p - v, p').
    """
    if p.degree < 2:
        raise ValueError("critical data need degree at least 2")
    deriv = p.derivative()
    if deriv.is_zero():
        raise DerivativeDegenerate("zero derivative over the rationals")
    crit = structured_roots(deriv)  # (point, multiplicity in p')
    values = [(p.eval_complex(z), m) for z, m in crit]
    spread = max((abs(v) for v, _ in values), default=1.0)
    cut = tol * max(1.0, spread)

    clusters: list[tuple[complex, list[int]]] = []
    for v, m in sorted(values, key=lambda vm: (vm[0].real, vm[0].imag)):
        for center, mults in clusters:
            if abs(v - center) <= cut:
                mults.append(m)
                break
        else:
            clusters.append((v, [m]))

    refined: list[tuple[complex, list[int]]] = []
    for center, mults in clusters:
        exact = _exact_rational_value(p, deriv, center, cut)
        if exact is not None:
            center, mults = exact
        refined.append((center, mults))

    entries = []
    ordered = sorted(refined, key=lambda cm: (cm[0].real, cm[0].imag))
    for i, (center, mults) in enumerate(ordered):
        order = math.lcm(*(m + 1 for m in mults))
        entries.append((f"v{i + 1}", order))
    entries.append(("inf", p.degree))
    return BranchingDatum(tuple(entries))


def _exact_rational_value(p, deriv, center: complex, cut: float):
    """If the cluster center is a rational critical value, recount exactly."""
    if abs(center.imag) > cut:
        return None
    guess = Fraction(center.real).limit_denominator(10**6)
    if abs(complex(guess) - center) > cut:
        return None
    common = (p - ExactPolynomial.constant(guess)).gcd(deriv)
    if common.degree < 1:
        return None
    # multiplicities of p' at the roots of gcd(p - guess, p')
    mults = []
    for factor, m in deriv.squarefree_decomposition():
        shared = factor.gcd(common)
        mults.extend([m] * shared.degree)
    if not mults:
        return None
    return complex(guess), mults


# ---------------------------------------------------------------------------
# exact decomposition into indecomposables

def _inner_candidate(p: ExactPolynomial, m: int) -> ExactPolynomial | None:
    """Monic inner factor h of degree m with h(0) = 0, by triangular matching.

    When p = g(h) exists with deg h = m, the normalization (h monic, no
    constant term) makes h unique, and its coefficients fall out of the top
    coefficients of p one at a time.
    """
    n = p.degree
    r = n // m
    monic = p.monic()
    h = [Fraction(0)] * (m + 1)
    h[m] = Fraction(1)
    for j in range(1, m):
        # coefficient of z^(n-j) in h^r, with h known above index m-j
        known = list(h)
        known[m - j] = Fraction(0)
        partial = ExactPolynomial(tuple(known)) ** r
        residual = monic.coefficient(n - j) - partial.coefficient(n - j)
        h[m - j] = residual / r
    return ExactPolynomial(tuple(h))


def _outer_digits(p: ExactPolynomial, h: ExactPolynomial) -> ExactPolynomial | None:
    """g with p = g(h), via the h-adic expansion; None when digits are not constant."""
    digits = []
    rest = p
    while True:
        quot, rem = rest.divmod(h)
        if rem.degree > 0:
            return None
        digits.append(rem.coefficient(0))
        if quot.is_zero():
            break
        rest = quot
    return ExactPolynomial(tuple(digits))


def decompose_poly(p: ExactPolynomial) -> list[ExactPolynomial]:
    """Indecomposable factors [g1, ..., gr] with p = g1 o g2 o ... o gr.

    Divisors are tried as the degree of the outer factor in increasing
    order, so z^6 splits as (z^2, z^3).  Composition of the returned list
    reproduces p exactly.
    """
    n = p.degree
    if n < 1:
        raise ValueError("decomposition needs degree at least 1")
    for outer_degree in range(2, n):
        if n % outer_degree != 0:
            continue
        m = n // outer_degree  # inner degree
        h = _inner_candidate(p, m)
        if h is None:
            continue
        g = _outer_digits(p, h)
        if g is None or g.degree != outer_degree:
            continue
        if g.compose(h) == p:
            return decompose_poly(g) + decompose_poly(h)
    return [p]


# ---------------------------------------------------------------------------
# factor classification with exact linear witnesses

class FactorTag(str, enum.Enum):
    POWER_LIKE = "PowerLike"
    CHEBYSHEV_LIKE = "ChebyshevLike"
    DEGREE4_OR_LESS = "Degree4OrLess"
    OBSTRUCTED = "Obstructed"


@dataclasses.dataclass(frozen=True)
class PowerWitness:
    """p(z) = scale * (z + shift)^n + offset, all rational."""

    n: int
    scale: Fraction
    shift: Fraction
    offset: Fraction

    def rebuild(self) -> ExactPolynomial:
        base = ExactPolynomial((self.shift, Fraction(1))) ** self.n
        return base * self.scale + ExactPolynomial.constant(self.offset)

    def linear_maps(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        # outer L1(w) = scale * w + offset, inner L2(z) = z + shift
        return (
            (complex(self.scale), complex(self.offset)),
            (1.0 + 0j, complex(self.shift)),
        )

    def inverse_expr(self, w) -> RadicalExpr:
        w = as_expr(w)
        return Root(self.n, (w - as_expr(self.offset)) / as_expr(self.scale)) - as_expr(
            self.shift
        )


@dataclasses.dataclass(frozen=True)
class ChebyshevWitness:
    """p(z) = sqrt(d_sq) * P_n(alpha (z + shift)) + offset with alpha^2 = alpha_sq.

    d_sq, alpha_sq, shift and offset are exact rationals; alpha and sqrt(d_sq)
    themselves may be quadratic irrationals, which the radical trees carry as
    square-root nodes.
    """

    n: int
    alpha_sq: Fraction
    d_sq: Fraction
    shift: Fraction
    offset: Fraction

    def linear_maps(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        alpha = cmath.sqrt(complex(self.alpha_sq))
        sqrt_d = cmath.sqrt(complex(self.d_sq))
        return (
            (sqrt_d, complex(self.offset)),
            (alpha, alpha * complex(self.shift)),
        )

    def inverse_expr(self, w) -> RadicalExpr:
        w = as_expr(w)
        inner = invert_chebyshev(
            self.n, (w - as_expr(self.offset)) / Root(2, as_expr(self.d_sq))
        )
        return inner / Root(2, as_expr(self.alpha_sq)) - as_expr(self.shift)


@dataclasses.dataclass(frozen=True)
class FactorClass:
    tag: FactorTag
    factor: ExactPolynomial
    witness: PowerWitness | ChebyshevWitness | None = None

    def to_json(self) -> dict:
        out = {"tag": self.tag.value, "degree": self.factor.degree}
        if self.witness is not None:
            (g1, d1), (a1, b1) = self.witness.linear_maps()
            out["outer"] = {"scale": _c2j(g1), "offset": _c2j(d1)}
            out["inner"] = {"scale": _c2j(a1), "offset": _c2j(b1)}
        return out


def _c2j(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _power_witness(p: ExactPolynomial) -> PowerWitness | None:
    n = p.degree
    lead = p.leading
    shift = p.coefficient(n - 1) / (n * lead)
    centered = p.shift(-shift)
    if any(centered.coefficient(k) != 0 for k in range(1, n)):
        return None
    return PowerWitness(
        n=n, scale=lead, shift=shift, offset=centered.coefficient(0)
    )


def _chebyshev_witness(p: ExactPolynomial) -> ChebyshevWitness | None:
    """Exact match against sqrt(D) P_n(alpha(z + t)) + s, or None.

    The coefficient ratio at z^(n-2) pins alpha^2 rationally; everything
    else verifies exactly, so near-misses are rejected rather than accepted
    numerically.
    """
    n = p.degree
    if n < 2:
        return None
    lead = p.leading
    shift = p.coefficient(n - 1) / (n * lead)
    centered = p.shift(-shift)
    pn = chebyshev(n)
    # q = sqrt(D) * P_n(alpha z) + s: q_{n-2}/q_n = P_{n,n-2} / (2^(n-1) alpha^2)
    q_n = centered.coefficient(n)
    q_n2 = centered.coefficient(n - 2)
    if q_n2 == 0:
        return None
    alpha_sq = pn.coefficient(n - 2) * q_n / (pn.coefficient(n) * q_n2)
    if alpha_sq == 0:
        return None
    if n % 2 == 0:
        alpha_n = alpha_sq ** (n // 2)
        sqrt_d = q_n / (pn.coefficient(n) * alpha_n)  # rational here
        d_sq = sqrt_d * sqrt_d
        offset = centered.coefficient(0) - sqrt_d * pn.coefficient(0)
        for k in range(0, n + 1):
            expected = sqrt_d * pn.coefficient(k) * alpha_sq ** (k // 2) if k % 2 == 0 else 0
            got = centered.coefficient(k) - (offset if k == 0 else 0)
            if k % 2 == 1:
                if centered.coefficient(k) != 0:
                    return None
            elif got != expected:
                return None
    else:
        # odd n: P_n is odd; write sqrt(D) = rho / alpha with rho rational
        rho = q_n / (pn.coefficient(n) * alpha_sq ** ((n - 1) // 2))
        d_sq = rho * rho / alpha_sq
        offset = centered.coefficient(0)
        for k in range(0, n + 1):
            if k % 2 == 0:
                if k == 0:
                    continue
                if centered.coefficient(k) != 0:
                    return None
            else:
                expected = rho * pn.coefficient(k) * alpha_sq ** ((k - 1) // 2)
                if centered.coefficient(k) != expected:
                    return None
    return ChebyshevWitness(
        n=n, alpha_sq=alpha_sq, d_sq=d_sq, shift=shift, offset=offset
    )


def classify_factor(p: ExactPolynomial) -> FactorClass:
    """Tag an indecomposable polynomial for the radical-inversion verdict."""
    n = p.degree
    if n < 1:
        raise ValueError("factors have degree at least 1")
    if len(decompose_poly(p)) > 1:
        raise NotIndecomposable("classification expects an indecomposable factor")
    if n <= 4:
        return FactorClass(FactorTag.DEGREE4_OR_LESS, p)
    power = _power_witness(p)
    if power is not None:
        return FactorClass(FactorTag.POWER_LIKE, p, power)
    cheb = _chebyshev_witness(p)
    if cheb is not None:
        return FactorClass(FactorTag.CHEBYSHEV_LIKE, p, cheb)
    return FactorClass(FactorTag.OBSTRUCTED, p)


# ---------------------------------------------------------------------------
# the verdict and the chained radical inverse

def ritt_verdict(p: ExactPolynomial) -> tuple[bool, list[FactorClass]]:
    """(invertible in radicals, classified indecomposable factors)."""
    factors = decompose_poly(p)
    classes = [classify_factor(f) for f in factors]
    invertible = all(c.tag != FactorTag.OBSTRUCTED for c in classes)
    return invertible, classes


def _invert_factor(cls: FactorClass, target: RadicalExpr) -> RadicalExpr:
    """Radical expression for the solutions of factor(z) = target."""
    f = cls.factor
    n = f.degree
    if cls.witness is not None:
        return cls.witness.inverse_expr(target)
    if n == 1:
        a, b = f.coefficient(1), f.coefficient(0)
        return (target - as_expr(b)) / as_expr(a)
    if n == 2:
        a, b, c = f.coefficient(2), f.coefficient(1), f.coefficient(0)
        disc = as_expr(b * b - 4 * a * c) + as_expr(4 * a) * target
        return (Root(2, disc) - as_expr(b)) / as_expr(2 * a)
    if n == 3:
        return cubic_shape(f).inverse_expr(target)
    if n == 4:
        return quartic_inverse_expr(f, target)
    raise NotIndecomposable(f"no radical inverse for tag {cls.tag}")


def radical_inverse(p: ExactPolynomial, target: Fraction | int) -> RadicalExpr | None:
    """One multivalued tree whose values include every root of p(z) = target.

    None when some factor is obstructed.  Factors invert outermost first;
    each stage's tree becomes the next stage's target.
    """
    invertible, classes = ritt_verdict(p)
    if not invertible:
        return None
    expr: RadicalExpr = RationalConst(Fraction(target))
    for cls in classes:
        expr = _invert_factor(cls, expr)
    return expr


def verify_radical_inverse(
    p: ExactPolynomial,
    target: Fraction | int,
    tol: float = 1e-7,
) -> list[complex]:
    """Stagewise evaluation of the chained inverse, filtered per stage.

    Evaluates factor by factor, keeping only values on the fiber of the
    stage target; every value returned satisfies |p(z) - target| below the
    tolerance scale.  Staging evaluates the same tree the chain emits, one
    composition level at a time, which keeps branch counts small.
    """
    invertible, classes = ritt_verdict(p)
    if not invertible:
        return []
    current = [complex(Fraction(target))]
    for cls in classes:
        nxt: list[complex] = []
        for value in current:
            stage = _invert_factor(cls, ComplexLit(value))
            for candidate in eval_multi(stage, tol=1e-12):
                polished = candidate
                resid = abs(cls.factor.eval_complex(polished) - value)
                if resid <= 1e-6 * (1.0 + residual_scale(cls.factor, polished)):
                    nxt.append(polished)
        current = dedup_complex(nxt, 1e-9)
    final = [
        z
        for z in current
        if abs(p.eval_complex(z) - complex(Fraction(target)))
        <= tol * (1.0 + residual_scale(p, z))
    ]
    return final


# ---------------------------------------------------------------------------
# numeric monodromy by loop tracking

def numeric_monodromy(
    p: ExactPolynomial,
    steps: int = 720,
    max_doublings: int = 3,
) -> list[tuple[complex, Permutation]]:
    """Sheet permutations around each finite critical value of the map p.

    Tracks the fiber over a real base point along a segment-circle-segment
    loop around each clustered critical value, with fixed-step analytic
    continuation (Newton updates per step); steps double on non-closure.
    """
    n = p.degree
    deriv = p.derivative()
    crit_values = dedup_complex(
        [p.eval_complex(z) for z, _ in structured_roots(deriv)], 1e-8
    )
    if not crit_values:
        return []
    radius_bound = max(abs(v) for v in crit_values)
    base = complex(2.0 * radius_bound + 1.0, 0.37)  # off-axis; avoids collisions

    def fiber_at(w: complex) -> list[complex]:
        coeffs = np.array(p.float_coeffs_desc(), dtype=complex)
        coeffs[-1] -= w
        return [complex(r) for r in np.roots(coeffs)]

    start_fiber = fiber_at(base)
    min_gap = min(
        abs(a - b)
        for i, a in enumerate(start_fiber)
        for b in start_fiber[i + 1 :]
    )

    out = []
    for v in sorted(crit_values, key=lambda z: (z.real, z.imag)):
        others = [u for u in crit_values if abs(u - v) > 1e-9] + [base]
        loop_radius = min(abs(u - v) for u in others) / 3.0
        perm = None
        current_steps = steps
        for _ in range(max_doublings + 1):
            perm = _track_loop(p, deriv, start_fiber, base, v, loop_radius,
                               current_steps, min_gap)
            if perm is not None:
                break
            current_steps *= 2
        if perm is None:
            raise ArithmeticError(f"loop tracking failed to close around {v}")
        out.append((v, perm))
    return out


def _track_loop(p, deriv, start_fiber, base, center, radius, steps, min_gap):
    """Continue the fiber along base -> circle(center, radius) -> base."""
    n = len(start_fiber)
    direction = (center - base) / abs(center - base)
    circle_start = center - radius * direction  # nearest circle point to base

    path: list[complex] = []
    seg_steps = max(60, steps // 4)
    for k in range(1, seg_steps + 1):
        path.append(base + (circle_start - base) * k / seg_steps)
    theta0 = cmath.phase(circle_start - center)
    for k in range(1, steps + 1):
        path.append(center + radius * cmath.exp(1j * (theta0 + 2 * math.pi * k / steps)))
    for k in range(1, seg_steps + 1):
        path.append(circle_start + (base - circle_start) * k / seg_steps)

    fiber = list(start_fiber)
    for w in path:
        new_fiber = []
        for z in fiber:
            x = z
            for _ in range(3):
                d = deriv.eval_complex(x)
                if abs(d) < 1e-300:
                    return None
                x = x - (p.eval_complex(x) - w) / d
            new_fiber.append(x)
        # sheets must stay separated for the tracking to be trustworthy
        for i in range(n):
            for j in range(i + 1, n):
                if abs(new_fiber[i] - new_fiber[j]) < min_gap / 10.0:
                    return None
        fiber = new_fiber

    images = []
    for z in fiber:
        dists = [abs(z - s) for s in start_fiber]
        best = min(range(n), key=dists.__getitem__)
        if dists[best] > min_gap / 3.0:
            return None
        images.append(best)
    if sorted(images) != list(range(n)):
        return None
    return Permutation(tuple(images))
