"""Shared test utilities: random constellations and independent oracles.

Oracles here stay deliberately naive (brute force enumeration, simultaneous
iteration) so they are independent of the code paths they check.
"""
from __future__ import annotations

import itertools
import random
from math import lcm

from ramified.covering import BranchingDatum, Constellation
from ramified.errors import InvalidConstellation
from ramified.perm import GroupTable, Permutation, generate_group

DEFAULT_SEED = 0


def rng(seed=DEFAULT_SEED) -> random.Random:
    return random.Random(seed)


def random_permutation(r: random.Random, n: int) -> Permutation:
    images = list(range(n))
    r.shuffle(images)
    return Permutation(tuple(images))


def forced_last_slot(perms: list[Permutation]) -> Permutation:
    prod = Permutation.identity(perms[0].degree)
    for p in perms:
        prod = prod * p
    return prod.inverse()


def random_constellation(
    r: random.Random,
    degree: int | None = None,
    max_degree: int = 8,
    n_slots: int | None = None,
    max_tries: int = 200,
) -> Constellation:
    """Random valid constellation; retries until the joint action is transitive."""
    for _ in range(max_tries):
        n = degree if degree is not None else r.randint(2, max_degree)
        k = n_slots if n_slots is not None else r.randint(2, 4)
        perms = [random_permutation(r, n) for _ in range(k - 1)]
        perms.append(forced_last_slot(perms))
        labels = [f"p{i + 1}" for i in range(k)]
        try:
            return Constellation(n, tuple(zip(labels, perms)))
        except InvalidConstellation:
            continue
    raise RuntimeError("failed to sample a transitive constellation")


def random_perm_with_order_dividing(
    r: random.Random, n: int, order: int
) -> Permutation:
    """Random permutation whose cycle lengths all divide the given order."""
    divisors = [d for d in range(1, order + 1) if order % d == 0]
    points = list(range(n))
    r.shuffle(points)
    cycles = []
    while points:
        options = [d for d in divisors if d <= len(points)]
        length = r.choice(options)
        cycles.append(tuple(points[:length]))
        points = points[length:]
    return Permutation.from_cycles(n, cycles)


def random_subject_constellation(
    r: random.Random,
    orders: tuple[int, ...],
    degree: int,
    max_tries: int = 400,
) -> Constellation | None:
    """Random constellation subject to a datum with the given orders.

    Branch labels are p1, p2, ... in order.  Returns None when sampling fails,
    which happens for datum/degree pairs that are unrealizable.
    """
    k = len(orders)
    labels = [f"p{i + 1}" for i in range(k)]
    for _ in range(max_tries):
        perms = [
            random_perm_with_order_dividing(r, degree, o) for o in orders[:-1]
        ]
        last = forced_last_slot(perms)
        if any(orders[-1] % length != 0 for length in last.cycle_type()):
            continue
        perms.append(last)
        try:
            return Constellation(degree, tuple(zip(labels, perms)))
        except InvalidConstellation:
            continue
    return None


def brute_force_order(p: Permutation) -> int:
    """Least m >= 1 with p^m the identity, by repeated multiplication."""
    q = p
    m = 1
    while not q.is_identity():
        q = q * p
        m += 1
    return m


def all_subgroups(g: GroupTable) -> list[frozenset]:
    """Every subgroup as a frozenset of image tuples; fine up to order ~24."""
    elements = [e.images for e in g.elements]
    ident = tuple(range(g.degree))
    subgroups = {frozenset([ident])}
    frontier = [frozenset([ident])]
    while frontier:
        h = frontier.pop()
        for e in elements:
            if e in h:
                continue
            gens = [Permutation(x) for x in (list(h) + [e])]
            closed = frozenset(
                x.images for x in generate_group(gens, cap=g.order + 1).elements
            )
            if closed not in subgroups:
                subgroups.add(closed)
                frontier.append(closed)
    return sorted(subgroups, key=len)


def _compose_raw(a, b):
    return tuple(b[x] for x in a)


def _inverse_raw(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def solvable_by_chain_oracle(g: GroupTable) -> bool:
    """Composition-chain oracle: a normal chain with abelian quotients exists.

    Searches subgroup chains directly instead of computing derived series, so
    it is independent of the implementation it checks.  Usable for order <= 24.
    """

    def as_table(elements: frozenset) -> GroupTable:
        perms = tuple(Permutation(x) for x in sorted(elements))
        return GroupTable(g.degree, perms, perms, len(perms), False)

    def solvable_set(current: frozenset) -> bool:
        if len(current) == 1:
            return True
        for h in all_subgroups(as_table(current)):
            if len(h) == len(current):
                continue
            normal = all(
                _compose_raw(_inverse_raw(e), _compose_raw(x, e)) in h
                for e in current
                for x in h
            )
            # quotient by h is abelian iff every commutator lands in h
            abelian_quotient = all(
                _compose_raw(
                    _compose_raw(_inverse_raw(a), _inverse_raw(b)),
                    _compose_raw(a, b),
                )
                in h
                for a in current
                for b in current
            )
            if normal and abelian_quotient and solvable_set(h):
                return True
        return False

    return solvable_set(frozenset(e.images for e in g.elements))


def durand_kerner(coeffs, iterations: int = 200, tol: float = 1e-13):
    """Simultaneous-iteration roots of a polynomial given low-to-high coeffs."""
    cs = [complex(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    degree = len(cs) - 1
    if degree < 1:
        return []
    lead = cs[-1]
    monic = [c / lead for c in cs]

    def value(z):
        acc = 0j
        for c in reversed(monic):
            acc = acc * z + c
        return acc

    roots = [(0.4 + 0.9j) ** k for k in range(degree)]
    for _ in range(iterations):
        shift = 0.0
        new_roots = []
        for i, z in enumerate(roots):
            denom = 1.0 + 0j
            for j, w in enumerate(roots):
                if j != i:
                    denom *= z - w
            delta = value(z) / denom
            new_roots.append(z - delta)
            shift = max(shift, abs(delta))
        roots = new_roots
        if shift < tol:
            break
    return roots


def multisets_match(xs, ys, tol: float) -> bool:
    """Greedy one-to-one matching of two complex multisets within tol."""
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for x in xs:
        best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - x), default=None)
        if best is None or abs(remaining[best] - x) > tol:
            return False
        remaining.pop(best)
    return True
