"""Canonical minimal Galois constellations for the nine privileged families.

Sphere families are regular actions of the cyclic, dihedral, tetrahedral,
cube and icosahedral rotation groups; torus families are regular actions of
the affine groups {v -> A^j v + b} on the quotient module (Z/m)^2, with a
fixed multiplier matrix A of order 6, 3, 4 or 2 per family.

Platonic groups come from deterministic generator searches inside the
natural degree-4/5 actions, regularized through the Galois closure, so no
60-by-60 tables are hand-coded and the construction is self-verifying.
Torus groups are built abstractly as pairs (j, b) because the affine action
on the module itself is unfaithful for small m (for m <= 2 the multiplier
-1 acts trivially on points while the deck transformation is not trivial).
"""
from __future__ import annotations

import dataclasses
from itertools import product as iproduct

from .classify import DatumFamily
from .covering import Constellation
from .errors import UnrealizableParam
from .galois import galois_closure
from .perm import Permutation, generate_group

Matrix = tuple[tuple[int, int], tuple[int, int]]

# fixed multiplier matrices: order-3 Eisenstein unit, its negative (order 6),
# the order-4 Gaussian unit, and -identity (order 2)
EISENSTEIN_ORDER3: Matrix = ((0, -1), (1, -1))
EISENSTEIN_ORDER6: Matrix = ((0, 1), (-1, 1))
GAUSSIAN_ORDER4: Matrix = ((0, -1), (1, 0))
NEGATIVE_IDENTITY: Matrix = ((-1, 0), (0, -1))

_TORUS_DATA = {
    DatumFamily.TORUS_236: (6, EISENSTEIN_ORDER6),
    DatumFamily.TORUS_333: (3, EISENSTEIN_ORDER3),
    DatumFamily.TORUS_244: (4, GAUSSIAN_ORDER4),
    DatumFamily.TORUS_2222: (2, NEGATIVE_IDENTITY),
}


@dataclasses.dataclass(frozen=True)
class ExemplarSpec:
    """Family tag plus the integer parameter it needs.

    ``param`` is the n of (n,n) and (2,2,n) and the translation index m of
    the torus families; the platonic families ignore it.
    """

    family: DatumFamily
    param: int = 1

    def __post_init__(self):
        if self.family == DatumFamily.OTHER:
            raise ValueError("no exemplar exists for the Other class")
        if self.param < 1:
            raise ValueError("param must be at least 1")


def _power_exemplar(n: int) -> Constellation:
    sigma = Permutation.from_cycles(n, [tuple(range(n))])
    return Constellation(n, (("p1", sigma), ("p2", sigma.inverse())))


class _AffineGroup:
    """The group {v -> A^j v + b} on (Z/m)^2, held abstractly as pairs (j, b).

    Multiplication follows apply-first-then-second composition:
    (j1, b1) * (j2, b2) = (j1 + j2, A^j2 b1 + b2).
    """

    def __init__(self, k: int, matrix: Matrix, m: int):
        self.k = k
        self.m = m
        self.powers = [((1, 0), (0, 1))]
        for _ in range(k - 1):
            self.powers.append(self._matmul(self.powers[-1], matrix))
        self.elements = [
            (j, (b1, b2))
            for j in range(k)
            for b1 in range(m)
            for b2 in range(m)
        ]
        self.index = {e: i for i, e in enumerate(self.elements)}

    def _matmul(self, a: Matrix, b: Matrix) -> Matrix:
        m = self.m
        return tuple(
            tuple(
                sum(a[i][t] * b[t][j] for t in range(2)) % m if m > 1 else 0
                for j in range(2)
            )
            for i in range(2)
        )

    def _apply(self, j: int, b: tuple[int, int]) -> tuple[int, int]:
        a = self.powers[j]
        m = self.m
        if m == 1:
            return (0, 0)
        return (
            (a[0][0] * b[0] + a[0][1] * b[1]) % m,
            (a[1][0] * b[0] + a[1][1] * b[1]) % m,
        )

    def mul(self, x, y):
        j1, b1 = x
        j2, b2 = y
        moved = self._apply(j2, b1)
        m = self.m
        b = ((moved[0] + b2[0]) % m, (moved[1] + b2[1]) % m) if m > 1 else (0, 0)
        return ((j1 + j2) % self.k, b)

    def generates_all(self, gens) -> bool:
        ident = (0, (0, 0))
        seen = {ident}
        frontier = [ident]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return len(seen) == len(self.elements)

    def regular_perm(self, g) -> Permutation:
        return Permutation(
            tuple(self.index[self.mul(e, g)] for e in self.elements)
        )

    def regular_constellation(self, labeled_gens) -> Constellation:
        slots = tuple(
            (label, self.regular_perm(g)) for label, g in labeled_gens
        )
        return Constellation(len(self.elements), slots)


def _dihedral_exemplar(n: int) -> Constellation:
    """Regular D_n as maps z -> +-z + b on Z/n, slots of orders (2, 2, n)."""
    # elements (eps, b) with eps in {0,1} encoding the sign, b in Z/n
    elements = [(eps, b) for eps in range(2) for b in range(n)]
    index = {e: i for i, e in enumerate(elements)}

    def mul(x, y):
        e1, b1 = x
        e2, b2 = y
        # apply x then y: z -> (-1)^e2 ((-1)^e1 z + b1) + b2
        b = ((-b1 if e2 else b1) + b2) % n
        return ((e1 + e2) % 2, b)

    def regular(g):
        return Permutation(tuple(index[mul(e, g)] for e in elements))

    x = (1, 0)
    y = (1, 1 % n)
    prod = mul(x, y)
    slots = (
        ("p1", regular(x)),
        ("p2", regular(y)),
        ("p3", regular(_group_inverse(mul, prod, (0, 0)))),
    )
    return Constellation(2 * n, slots)


def _group_inverse(mul, g, identity):
    if g == identity:
        return identity
    acc = g
    while True:
        nxt = mul(acc, g)
        if nxt == identity:
            return acc
        acc = nxt


def _platonic_exemplar(family: DatumFamily) -> Constellation:
    """Regular A4 / S4 / A5 from a deterministic (2, 3, m) generator search."""
    degree, product_order, group_order = {
        DatumFamily.TETRA_233: (4, 3, 12),
        DatumFamily.OCTA_234: (4, 4, 24),
        DatumFamily.ICOSA_235: (5, 5, 60),
    }[family]
    from itertools import permutations

    candidates = [Permutation(p) for p in permutations(range(degree))]
    twos = [p for p in candidates if p.order() == 2]
    threes = [p for p in candidates if p.order() == 3]
    for x in twos:
        for y in threes:
            xy = x * y
            if xy.order() != product_order:
                continue
            group = generate_group([x, y])
            if group.order != group_order or not group.transitive:
                continue
            natural = Constellation(
                degree, (("p1", x), ("p2", y), ("p3", xy.inverse()))
            )
            return galois_closure(natural)
    raise UnrealizableParam(f"no generator pair found for {family.value}")


def _torus_exemplar(family: DatumFamily, m: int) -> Constellation:
    """Regular affine group on (Z/m)^2 with the family's slot shape.

    Triangle families search small translation parts for a generating
    triple; the four-slot family uses the explicit translations
    (0, e1, e1+e2, e2) whose alternating sum vanishes, which makes the slot
    product the identity.
    """
    k, matrix = _TORUS_DATA[family]
    group = _AffineGroup(k, matrix, m)
    if family == DatumFamily.TORUS_2222:
        e1, e2 = (1 % m, 0), (0, 1 % m)
        e12 = ((e1[0] + e2[0]) % m, (e1[1] + e2[1]) % m) if m > 1 else (0, 0)
        gens = [(1, (0, 0)), (1, e1), (1, e12), (1, e2)]
        prod = (0, (0, 0))
        for g in gens:
            prod = group.mul(prod, g)
        if prod != (0, (0, 0)) or not group.generates_all(gens):
            raise UnrealizableParam(f"Torus2222 construction failed for m={m}")
        labeled = list(zip(("p1", "p2", "p3", "p4"), gens))
        return group.regular_constellation(labeled)

    j1, j2 = {
        DatumFamily.TORUS_236: (3, 2),  # orders (2, 3); product has order 6
        DatumFamily.TORUS_333: (1, 1),
        DatumFamily.TORUS_244: (2, 1),  # orders (2, 4); product has order 4
    }[family]
    translations = sorted(iproduct(range(m), repeat=2))
    for b1 in translations:
        for b2 in translations:
            g1, g2 = (j1, b1), (j2, b2)
            if not group.generates_all([g1, g2]):
                continue
            g3 = _group_inverse(group.mul, group.mul(g1, g2), (0, (0, 0)))
            return group.regular_constellation(
                [("p1", g1), ("p2", g2), ("p3", g3)]
            )
    raise UnrealizableParam(
        f"no generating slot pair on (Z/{m})^2 for {family.value}"
    )


def exemplar(spec: ExemplarSpec) -> Constellation:
    """The minimal Galois constellation for the family, regular by construction."""
    family, param = spec.family, spec.param
    if family == DatumFamily.POWER_NN:
        return _power_exemplar(param)
    if family == DatumFamily.DIHEDRAL_22N:
        return _dihedral_exemplar(param)
    if family in (DatumFamily.TETRA_233, DatumFamily.OCTA_234, DatumFamily.ICOSA_235):
        return _platonic_exemplar(family)
    if family in _TORUS_DATA:
        return _torus_exemplar(family, param)
    raise ValueError(f"unknown family {family}")


def all_exemplars(param: int = 1, torus_param: int | None = None):
    """One exemplar per family: (family, constellation) pairs.

    ``param`` feeds the cyclic/dihedral families (their n); ``torus_param``
    feeds the torus families (their m) and defaults to ``1``.
    """
    tm = 1 if torus_param is None else torus_param
    out = []
    for family in DatumFamily:
        if family == DatumFamily.OTHER:
            continue
        p = tm if family in _TORUS_DATA else param
        out.append((family, exemplar(ExemplarSpec(family, p))))
    return out
