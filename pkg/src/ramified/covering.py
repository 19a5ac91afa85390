"""Constellations: combinatorial branched coverings of the sphere.

A constellation of degree n is an ordered list of labeled permutations of the
sheet set {0, ..., n-1}, one slot per branch point, whose left-to-right
product is the identity (the monodromy around everything is trivial) and
whose joint action is transitive (the total space is connected).

The branching datum of a constellation records, at each branch point, the
least common multiple of the local cycle lengths there.  Genus comes from
exact integer Euler-characteristic bookkeeping; no floating point enters
this module.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    InvalidConstellation,
    NegativeGenus,
    NonIntegerGenus,
)
from .perm import Permutation, _compose_raw, _orbit_raw


@dataclasses.dataclass(frozen=True)
class BranchingDatum:
    """Distinct branch-point labels with orders >= 2."""

    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        entries = tuple((str(label), int(order)) for label, order in self.entries)
        object.__setattr__(self, "entries", entries)
        labels = [label for label, _ in entries]
        if len(set(labels)) != len(labels):
            raise ValueError("branch point labels must be distinct")
        if any(order < 2 for _, order in entries):
            raise ValueError("every branching order must be at least 2")

    def orders(self) -> tuple[int, ...]:
        """Order multiset, sorted ascending."""
        return tuple(sorted(order for _, order in self.entries))

    def order_at(self, label: str) -> int | None:
        for lab, order in self.entries:
            if lab == label:
                return order
        return None

    def __len__(self) -> int:
        return len(self.entries)


@dataclasses.dataclass(frozen=True)
class Constellation:
    """Degree plus labeled slot permutations with identity product."""

    degree: int
    slots: tuple[tuple[str, Permutation], ...]

    def __post_init__(self):
        slots = tuple((str(label), perm) for label, perm in self.slots)
        object.__setattr__(self, "slots", slots)
        n = self.degree
        if n < 1:
            raise InvalidConstellation("degree must be at least 1")
        labels = [label for label, _ in slots]
        if len(set(labels)) != len(labels):
            raise InvalidConstellation("slot labels must be distinct")
        for label, perm in slots:
            if perm.degree != n:
                raise InvalidConstellation(
                    f"slot {label!r} has degree {perm.degree}, expected {n}"
                )
        prod = tuple(range(n))
        for _, perm in slots:
            prod = _compose_raw(prod, perm.images)
        if prod != tuple(range(n)):
            raise InvalidConstellation("slot product is not the identity")
        raw = [perm.images for _, perm in slots]
        if raw and len(_orbit_raw(raw, 0, n)) != n:
            raise InvalidConstellation("joint action is not transitive")
        if not raw and n != 1:
            raise InvalidConstellation("an empty constellation must have degree 1")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.slots)

    def perm_at(self, label: str) -> Permutation | None:
        for lab, perm in self.slots:
            if lab == label:
                return perm
        return None

    def slot_perms(self) -> tuple[Permutation, ...]:
        return tuple(perm for _, perm in self.slots)

    def normalized(self) -> "Constellation":
        """Drop identity slots; composition-produced constellations clean up."""
        kept = tuple((l, p) for l, p in self.slots if not p.is_identity())
        return Constellation(self.degree, kept)

    def relabeled(self, r: Permutation) -> "Constellation":
        """Simultaneously conjugate every slot by the sheet relabeling r."""
        return Constellation(
            self.degree,
            tuple((label, perm.conjugate_by(r)) for label, perm in self.slots),
        )

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "slots": [
                {"point": label, "perm": list(perm.images)}
                for label, perm in self.slots
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "Constellation":
        try:
            degree = int(data["degree"])
            slots = tuple(
                (str(slot["point"]), Permutation(tuple(slot["perm"])))
                for slot in data["slots"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConstellation(f"malformed constellation JSON: {exc}") from exc
        return Constellation(degree, slots)


def branching_datum(c: Constellation) -> tuple[BranchingDatum, list[tuple[int, ...]]]:
    """Datum (orders >= 2 only) and passport (all slot cycle types)."""
    entries = []
    passport = []
    for label, perm in c.slots:
        ctype = perm.cycle_type()
        passport.append(ctype)
        order = math.lcm(*ctype)
        if order >= 2:
            entries.append((label, order))
    return BranchingDatum(tuple(entries)), passport


def genus_rh(c: Constellation) -> int:
    """Genus of the total space over the sphere, by Euler characteristic count.

    The branching defect of a slot permutation is (degree - number of cycles),
    which equals the sum of (b_x - 1) over the fiber.
    """
    n = c.degree
    defect = sum(n - len(perm.cycles()) for _, perm in c.slots)
    chi = 2 * n - defect
    if chi % 2 != 0:
        raise NonIntegerGenus(f"odd Euler characteristic {chi} for degree {n}")
    genus = (2 - chi) // 2
    if genus < 0:
        raise NegativeGenus(f"negative genus {genus}")
    return genus


def is_subject_to(c: Constellation, d: BranchingDatum) -> bool:
    """Whether every local cycle length divides the datum order at its label.

    Slots at labels absent from the datum must be the identity.
    """
    for label, perm in c.slots:
        if perm.is_identity():
            continue
        order = d.order_at(label)
        if order is None:
            return False
        if any(order % length != 0 for length in perm.cycle_type()):
            return False
    return True


def galois_rh_genus(n: int, orders: Sequence[int]) -> Fraction:
    """Genus of a degree-n Galois covering of the sphere with the given orders.

    Returns an exact rational; the caller decides whether a non-integer or
    negative value rules the data out.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    if any(b < 2 for b in orders):
        raise ValueError("branching orders must be at least 2")
    total = sum(1 - Fraction(1, b) for b in orders)
    return 1 - Fraction(n, 2) * (2 - total)
