"""Monodromy groups, Galois closures, fibered products and domination.

A constellation is Galois exactly when its monodromy action is regular.  The
minimal Galois closure is the regular action of the monodromy group on its
own elements by right multiplication, indexed in breadth-first generation
order.  Fibered products decompose into orbit components; domination is
decided by basepoint propagation, which is complete at these degrees.
"""
from __future__ import annotations

from collections import deque
from typing import Sequence

from .covering import BranchingDatum, Constellation
from .errors import LabelMismatch
from .perm import (
    DEFAULT_CAP,
    GroupTable,
    Permutation,
    _compose_raw,
    _inverse_raw,
    generate_group,
)


def monodromy_group(c: Constellation, cap: int = DEFAULT_CAP) -> GroupTable:
    """Group generated by the slot permutations; transitive by construction."""
    perms = c.slot_perms()
    if not perms:
        return generate_group([Permutation.identity(c.degree)], cap)
    return generate_group(perms, cap)


def is_galois(c: Constellation, cap: int = DEFAULT_CAP) -> bool:
    """Regular monodromy: group order equals the degree."""
    return monodromy_group(c, cap).order == c.degree


def galois_closure(c: Constellation, cap: int = DEFAULT_CAP) -> Constellation:
    """Minimal Galois constellation dominating c.

    Slots keep their labels; each slot permutation becomes right
    multiplication by the original slot on the enumerated monodromy group.
    """
    group = monodromy_group(c, cap)
    elements = [e.images for e in group.elements]
    index = {e: i for i, e in enumerate(elements)}
    slots = []
    for label, perm in c.slots:
        images = tuple(index[_compose_raw(e, perm.images)] for e in elements)
        slots.append((label, Permutation(images)))
    return Constellation(group.order, tuple(slots))


def _merge_labels(l1: Sequence[str], l2: Sequence[str]) -> list[str]:
    """Merge two label sequences preserving both relative orders."""
    set1, set2 = set(l1), set(l2)
    out: list[str] = []
    i = j = 0
    while i < len(l1) or j < len(l2):
        if i < len(l1) and j < len(l2) and l1[i] == l2[j]:
            out.append(l1[i])
            i += 1
            j += 1
        elif i < len(l1) and l1[i] not in set2:
            out.append(l1[i])
            i += 1
        elif j < len(l2) and l2[j] not in set1:
            out.append(l2[j])
            j += 1
        else:
            raise LabelMismatch(
                f"shared labels appear in incompatible orders: {list(l1)} vs {list(l2)}"
            )
    return out


def _aligned_perms(
    c: Constellation, labels: Sequence[str]
) -> list[tuple[int, ...]]:
    ident = tuple(range(c.degree))
    by_label = {label: perm.images for label, perm in c.slots}
    return [by_label.get(label, ident) for label in labels]


def fibered_product(c1: Constellation, c2: Constellation) -> list[Constellation]:
    """Orbit components of the product action on sheet pairs.

    Components are emitted in order of their minimal pair (i, j); their
    degrees sum to degree(c1) * degree(c2).
    """
    labels = _merge_labels(c1.labels, c2.labels)
    p1 = _aligned_perms(c1, labels)
    p2 = _aligned_perms(c2, labels)
    n1, n2 = c1.degree, c2.degree
    total = n1 * n2
    # pair (i, j) <-> index i * n2 + j; lexicographic pair order = index order
    pair_perms = [
        tuple(a[idx // n2] * n2 + b[idx % n2] for idx in range(total))
        for a, b in zip(p1, p2)
    ]
    seen = [False] * total
    components = []
    for start in range(total):
        if seen[start]:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in pair_perms:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        points = sorted(orbit)
        for x in points:
            seen[x] = True
        reindex = {x: i for i, x in enumerate(points)}
        slots = tuple(
            (label, Permutation(tuple(reindex[g[x]] for x in points)))
            for label, g in zip(labels, pair_perms)
        )
        components.append(Constellation(len(points), slots))
    return components


def dominates(c1: Constellation, c2: Constellation) -> bool:
    """Whether a slot-equivariant surjection from c1's sheets onto c2's exists.

    The image of sheet 0 is guessed; everything else propagates along slot
    permutations and their inverses, so at most degree(c2) candidates are
    tried.
    """
    labels = _merge_labels(c1.labels, c2.labels)
    p1 = _aligned_perms(c1, labels)
    p2 = _aligned_perms(c2, labels)
    n1, n2 = c1.degree, c2.degree
    if n1 % n2 != 0:
        return False  # equivariant fibers over a transitive target are equal-sized
    inv1 = [_inverse_raw(g) for g in p1]
    inv2 = [_inverse_raw(g) for g in p2]
    moves = list(zip(p1, p2)) + list(zip(inv1, inv2))
    for y0 in range(n2):
        phi = [-1] * n1
        phi[0] = y0
        queue = deque([0])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for g1, g2 in moves:
                nx, ny = g1[x], g2[phi[x]]
                if phi[nx] == -1:
                    phi[nx] = ny
                    queue.append(nx)
                elif phi[nx] != ny:
                    ok = False
                    break
        if not ok or -1 in phi:
            continue
        if len(set(phi)) != n2:
            continue
        if all(phi[g1[x]] == g2[phi[x]] for g1, g2 in zip(p1, p2) for x in range(n1)):
            return True
    return False


def datum_preserved(c: Constellation, cap: int = DEFAULT_CAP) -> bool:
    """Convenience check: closure keeps the branching datum of c."""
    from .covering import branching_datum

    original, _ = branching_datum(c)
    closed, _ = branching_datum(galois_closure(c, cap))
    return dict(original.entries) == dict(closed.entries)
