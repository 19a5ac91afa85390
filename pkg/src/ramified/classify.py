"""Recognition and enumeration of the nine privileged branching data.

Nine order multisets force small monodromy: five sphere families
(n,n), (2,2,n), (2,3,3), (2,3,4), (2,3,5) and four torus families
(2,3,6), (3,3,3), (2,4,4), (2,2,2,2).  Everything else allows arbitrarily
large genus and monodromy.  This module classifies a datum against those
families, enumerates the families degree by degree from the exact genus
formula, solves the prime-degree critical-point equation, and checks the
affine normal form of solvable transitive groups of prime degree.
"""
from __future__ import annotations

import dataclasses
import enum
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .covering import BranchingDatum, galois_rh_genus
from .errors import NonDivisor, NotPrimeDegree, NotSolvable, NotTransitive
from .perm import GroupTable, Permutation, is_solvable

#: Wire encoding of an infinite multiplier order (the translation case).
INFINITE_ORDER = 0


class DatumFamily(str, enum.Enum):
    POWER_NN = "PowerNN"
    DIHEDRAL_22N = "Dihedral22N"
    TETRA_233 = "Tetra233"
    OCTA_234 = "Octa234"
    ICOSA_235 = "Icosa235"
    TORUS_236 = "Torus236"
    TORUS_333 = "Torus333"
    TORUS_244 = "Torus244"
    TORUS_2222 = "Torus2222"
    OTHER = "Other"


SPHERE_FAMILIES = (
    DatumFamily.POWER_NN,
    DatumFamily.DIHEDRAL_22N,
    DatumFamily.TETRA_233,
    DatumFamily.OCTA_234,
    DatumFamily.ICOSA_235,
)
TORUS_FAMILIES = (
    DatumFamily.TORUS_236,
    DatumFamily.TORUS_333,
    DatumFamily.TORUS_244,
    DatumFamily.TORUS_2222,
)


@dataclasses.dataclass(frozen=True)
class DatumClass:
    tag: DatumFamily
    solvable_guarantee: bool
    genus_bound: int | None  # None means unbounded
    degree5_equation: bool = False  # the icosahedral case needs a quintic

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "solvable_guarantee": self.solvable_guarantee,
            "genus_bound": "unbounded" if self.genus_bound is None else self.genus_bound,
            "degree5_equation": self.degree5_equation,
        }


def classify_orders(orders: Sequence[int]) -> DatumClass:
    """Classify an order multiset; labels are irrelevant to the family.

    Overlaps resolve in the fixed priority (n,n) -> (2,2,n) -> triangle
    types -> (2,2,2,2); the priority only affects the tag, never the
    solvability guarantee or the genus bound.
    """
    key = tuple(sorted(orders))
    tag = DatumFamily.OTHER
    if len(key) == 2 and key[0] == key[1] and key[0] >= 2:
        tag = DatumFamily.POWER_NN
    elif len(key) == 3 and key[0] == 2 and key[1] == 2 and key[2] >= 2:
        tag = DatumFamily.DIHEDRAL_22N
    elif key == (2, 3, 3):
        tag = DatumFamily.TETRA_233
    elif key == (2, 3, 4):
        tag = DatumFamily.OCTA_234
    elif key == (2, 3, 5):
        tag = DatumFamily.ICOSA_235
    elif key == (2, 3, 6):
        tag = DatumFamily.TORUS_236
    elif key == (3, 3, 3):
        tag = DatumFamily.TORUS_333
    elif key == (2, 4, 4):
        tag = DatumFamily.TORUS_244
    elif key == (2, 2, 2, 2):
        tag = DatumFamily.TORUS_2222
    if tag == DatumFamily.OTHER:
        return DatumClass(tag, solvable_guarantee=False, genus_bound=None)
    if tag == DatumFamily.ICOSA_235:
        return DatumClass(tag, False, 0, degree5_equation=True)
    bound = 0 if tag in SPHERE_FAMILIES else 1
    return DatumClass(tag, True, bound)


def classify_datum(d: BranchingDatum) -> DatumClass:
    return classify_orders(d.orders())


def _divisors_at_least_two(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def enumerate_galois_data(
    target_genus: int, n_max: int
) -> list[tuple[tuple[int, ...], int]]:
    """All (orders, n) with a genus-``target_genus`` Galois covering shape.

    For each degree n <= n_max, enumerates order multisets (each order at
    least 2 and dividing n) whose exact genus equals the target.  At most
    four orders can occur for genus 0 or 1, since each term of the branching
    sum is at least 1/2.
    """
    if target_genus not in (0, 1):
        raise ValueError("target genus must be 0 or 1")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    out = []
    for n in range(1, n_max + 1):
        divisors = _divisors_at_least_two(n)
        for k in range(1, 5):
            for orders in combinations_with_replacement(divisors, k):
                if galois_rh_genus(n, orders) == target_genus:
                    out.append((orders, n))
    return out


def ritt_equation_solutions() -> list[tuple[int, ...]]:
    """Multisets solving sum(1/n_i) = k - 2 with n_i in {2,3,...} or infinite.

    The infinite order (encoded as INFINITE_ORDER) contributes zero to the
    sum.  Exhaustive: each finite term is at most 1/2, so k <= 4, and at
    depth j the next order is bounded by (slots left)/(sum still needed).
    """
    def finite_combos(slots: int, remaining: Fraction, minimum: int):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        if remaining <= 0:
            return  # finite reciprocals are positive
        upper = int(slots / remaining)  # non-increasing reciprocals: rest <= slots/n
        for n in range(minimum, upper + 1):
            if Fraction(1, n) <= remaining:
                for tail in finite_combos(slots - 1, remaining - Fraction(1, n), n):
                    yield (n, *tail)

    solutions = set()
    for k in range(2, 5):
        for n_inf in range(0, k + 1):
            for finite in finite_combos(k - n_inf, Fraction(k - 2), 2):
                solutions.add(finite + (INFINITE_ORDER,) * n_inf)
    return sorted(
        solutions,
        key=lambda s: tuple(float("inf") if o == INFINITE_ORDER else o for o in s),
    )


def preimage_count(a_order: int, p: int) -> int:
    """Fiber size of z -> az + b on Z/p at a critical value.

    A translation (infinite order, a = 1) has one preimage; otherwise one
    fixed point plus (p-1)/ord(a) cycles.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if a_order == INFINITE_ORDER:
        return 1
    if a_order < 1 or (p - 1) % a_order != 0:
        raise NonDivisor(f"order {a_order} does not divide {p - 1}")
    return 1 + (p - 1) // a_order


def affine_embedding(g: GroupTable) -> list[int] | None:
    """Relabeling of the points as Z/p making every element z -> az + b.

    Requires a transitive solvable group of prime degree p <= 13.  Returns
    the relabeling (point -> residue) or None; None for a solvable input
    would contradict the affine normal form and is treated by the tests as
    a failure, not a valid outcome.
    """
    p = g.degree
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)) or p > 13:
        raise NotPrimeDegree(f"degree {p} is not a prime at most 13")
    if not g.transitive:
        raise NotTransitive("affine embedding requires a transitive action")
    if not is_solvable(g):
        raise NotSolvable("affine embedding requires a solvable group")

    cycle = next(e for e in g.elements if e.order() == p)  # exists by Cauchy
    elements = [e.images for e in g.elements]
    for power in range(1, p):
        step = cycle.images
        sigma = step
        for _ in range(power - 1):
            sigma = tuple(step[x] for x in sigma)
        for x0 in range(p):
            label = [0] * p
            x = x0
            for t in range(p):
                label[x] = t
                x = sigma[x]
            if _all_affine(elements, label, p):
                return label
    return None


def _all_affine(elements: Iterable[tuple[int, ...]], label: list[int], p: int) -> bool:
    position = [0] * p  # residue -> point
    for point, residue in enumerate(label):
        position[residue] = point
    for e in elements:
        b = label[e[position[0]]]
        a = (label[e[position[1]]] - b) % p
        if a == 0:
            return False
        if any(label[e[position[z]]] != (a * z + b) % p for z in range(2, p)):
            return False
    return True
