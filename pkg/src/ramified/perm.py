"""Permutations of {0, ..., n-1} and fully enumerated permutation groups.

Permutations are stored in word form: ``p.images[i]`` is the image of ``i``.
Composition is read left to right everywhere in this package:
``compose(p, q)`` applies ``p`` first, then ``q``, so
``compose(p, q).images[i] == q.images[p.images[i]]``.

Groups are enumerated in full by breadth-first closure.  That is deliberate:
the degrees in play are desk scale (a few hundred points, a few tens of
thousands of elements) and a complete element list makes solvability, block
systems and regular actions straightforward to verify.
"""
from __future__ import annotations

import dataclasses
import math
from collections import deque
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Sequence

from .errors import CapExceeded, NotTransitive

#: Default ceiling for breadth-first group enumeration.
DEFAULT_CAP = 10_000


def _compose_raw(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # result[i] = q[p[i]]  (apply p first, then q)
    return tuple(map(q.__getitem__, p))


def _inverse_raw(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def _wrap_raw(images: tuple[int, ...]) -> "Permutation":
    # images already known valid (produced by composition of valid ones)
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


def _orbit_raw(gens: Sequence[tuple[int, ...]], start: int, n: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


@dataclasses.dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1} in word form.

    >>> p = Permutation((1, 0, 2))
    >>> q = Permutation((0, 2, 1))
    >>> (p * q).images          # apply p first, then q
    (2, 0, 1)
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise ValueError("degree must be at least 1")
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {images}")
            seen[x] = True

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build a permutation of degree n from disjoint cycles.

        >>> Permutation.from_cycles(4, [(0, 1), (2, 3)]).images
        (1, 0, 3, 2)
        """
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for x in cycle:
                if x in seen:
                    raise ValueError("cycles are not disjoint")
                seen.add(x)
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return Permutation(tuple(images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> "Permutation":
        return Permutation(_inverse_raw(self.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, ordered by their smallest point."""
        out = []
        seen = [False] * self.degree
        for i in range(self.degree):
            if seen[i]:
                continue
            cycle = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cycle.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, largest first."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def conjugate_by(self, r: "Permutation") -> "Permutation":
        """Relabel points by r: returns r^-1 * self * r under left-to-right composition."""
        if r.degree != self.degree:
            raise ValueError("degree mismatch")
        images = [0] * self.degree
        for x in range(self.degree):
            images[r.images[x]] = r.images[self.images[x]]
        return Permutation(tuple(images))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q.

    >>> compose(Permutation((1, 0, 2)), Permutation((0, 2, 1))).images
    (2, 0, 1)
    """
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    return Permutation(_compose_raw(p.images, q.images))


def cycle_data(p: Permutation) -> tuple[tuple[int, ...], int]:
    """Cycle type (all cycle lengths, fixed points included) and element order."""
    ctype = p.cycle_type()
    return ctype, math.lcm(*ctype)


@dataclasses.dataclass(frozen=True)
class GroupTable:
    """A fully enumerated permutation group.

    ``elements`` is closed under composition and inverse and lists the
    identity first; its order is the breadth-first generation order, which
    downstream code relies on for reproducible regular actions.
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    order: int
    transitive: bool

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {e.images: i for i, e in enumerate(self.elements)}

    def index_of(self, p: Permutation) -> int:
        return self._index[p.images]

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._index


def _close_raw(
    gens: Sequence[tuple[int, ...]], n: int, cap: int
) -> list[tuple[int, ...]]:
    ident = tuple(range(n))
    elements: dict[tuple[int, ...], None] = {ident: None}
    queue = deque([ident])
    while queue:
        e = queue.popleft()
        for g in gens:
            f = _compose_raw(e, g)
            if f not in elements:
                if len(elements) >= cap:
                    raise CapExceeded(cap)
                elements[f] = None
                queue.append(f)
    return list(elements)


def generate_group(
    generators: Sequence[Permutation], cap: int = DEFAULT_CAP
) -> GroupTable:
    """Breadth-first closure of the generators under composition.

    Raises CapExceeded if the group would have more than ``cap`` elements.
    """
    if not generators:
        raise ValueError("at least one generator is required")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    n = generators[0].degree
    for g in generators:
        if g.degree != n:
            raise ValueError("generators must share a degree")
    raw_gens = [g.images for g in generators]
    elements = _close_raw(raw_gens, n, cap)
    transitive = len(_orbit_raw(raw_gens, 0, n)) == n
    return GroupTable(
        degree=n,
        generators=tuple(generators),
        elements=tuple(_wrap_raw(e) for e in elements),
        order=len(elements),
        transitive=transitive,
    )


def _commutator_raw(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # a^-1 b^-1 a b under left-to-right composition
    ab = _compose_raw(_inverse_raw(a), _inverse_raw(b))
    return _compose_raw(ab, _compose_raw(a, b))


def derived_subgroup(g: GroupTable) -> GroupTable:
    """Commutator subgroup: normal closure of generator commutators.

    The closure alternates "close under products" with "adjoin one missing
    conjugate"; each adjunction at least doubles the subgroup, so the
    generating set stays small even for large groups.
    """
    n = g.degree
    gens = [p.images for p in g.generators]
    inv_gens = [_inverse_raw(p) for p in gens]
    ident = tuple(range(n))
    seeds = {
        c
        for a, b in iproduct(gens, repeat=2)
        if (c := _commutator_raw(a, b)) != ident
    }
    if not seeds:
        trivial = (Permutation.identity(n),)
        return GroupTable(n, trivial, trivial, 1, n == 1)
    seed_list = sorted(seeds)
    while True:
        elements = _close_raw(seed_list, n, cap=g.order + 1)
        element_set = set(elements)
        missing = None
        for h in elements:
            for p, ip in zip(gens, inv_gens):
                conj = _compose_raw(ip, _compose_raw(h, p))
                if conj not in element_set:
                    missing = conj
                    break
            if missing is not None:
                break
        if missing is None:
            break
        seed_list.append(missing)
    return GroupTable(
        degree=n,
        generators=tuple(_wrap_raw(s) for s in seed_list),
        elements=tuple(_wrap_raw(e) for e in elements),
        order=len(elements),
        transitive=len(_orbit_raw(seed_list, 0, n)) == n,
    )


def is_solvable(g: GroupTable) -> bool:
    """Whether the derived series of g terminates at the trivial group."""
    current = g
    while current.order > 1:
        derived = derived_subgroup(current)
        if derived.order == current.order:
            return False  # nontrivial perfect group
        current = derived
    return True


def _minimal_partition(
    gens: Sequence[tuple[int, ...]], n: int, seed_pairs: Iterable[tuple[int, int]]
) -> tuple[tuple[int, ...], ...]:
    """Finest partition preserved by the generators merging the seed pairs."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue: deque[tuple[int, int]] = deque(seed_pairs)
    while queue:
        a, b = queue.popleft()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[rb] = ra
        for g in gens:
            queue.append((g[a], g[b]))
    blocks: dict[int, list[int]] = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(sorted(b)) for b in blocks.values()))


def block_systems(g: GroupTable) -> list[tuple[tuple[int, ...], ...]]:
    """All nontrivial block systems of a transitive group, coarser ones included.

    Pair closure of {0, i} yields every minimal system; closing under joins
    recovers the non-minimal ones (e.g. the rank-2 blocks of a regular
    elementary-abelian action).  The empty list means the action is primitive.
    """
    if not g.transitive:
        raise NotTransitive("block systems are defined for transitive groups")
    n = g.degree
    gens = [p.images for p in g.generators]

    def nontrivial(part) -> bool:
        return 1 < len(part[0]) < n

    found: set[tuple[tuple[int, ...], ...]] = set()
    for i in range(1, n):
        part = _minimal_partition(gens, n, [(0, i)])
        if nontrivial(part):
            found.add(part)
    # close under joins: the join of two systems is again a system
    worklist = list(found)
    while worklist:
        p = worklist.pop()
        for q in list(found):
            seeds = [(blk[0], x) for blk in (p[0], q[0]) for x in blk[1:]]
            join = _minimal_partition(gens, n, seeds)
            if nontrivial(join) and join not in found:
                found.add(join)
                worklist.append(join)
    return sorted(found, key=lambda part: (len(part[0]), part))
