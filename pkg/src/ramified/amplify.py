"""Unbranched cyclic extensions: same branching datum, larger genus.

The sheets of a constellation are cosets of the stabilizer of sheet 0
inside the free group on the first k-1 slot generators (the last slot is
the inverse of the product of the others).  A Schreier transversal plus
Reidemeister rewriting presents that stabilizer: its generators are free of
rank n(k-2) + 1, and each cycle of each slot contributes one puncture word.

Killing every puncture word with a surjection onto Z/d produces a degree-d
unbranched cover of the total space; composing with the original covering
multiplies the punctured Euler characteristic by d, so the genus moves from
g to d(g-1) + 1 while the branching datum stays fixed.  A primitive integer
vector in the kernel of the abelianized puncture matrix reduces to such a
surjection for every d, which is why only genus >= 1 is required.
"""
from __future__ import annotations

import dataclasses
import math
from collections import deque
from fractions import Fraction

from .covering import Constellation, genus_rh
from .errors import GenusTooSmall, NoSurjection
from .perm import Permutation, _inverse_raw

Word = tuple[int, ...]  # signed 1-based letters: +i / -i for generator i


def _free_reduce(word: Word) -> Word:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _invert_word(word: Word) -> Word:
    return tuple(-letter for letter in reversed(word))


@dataclasses.dataclass(frozen=True)
class SchreierData:
    """Transversal, stabilizer generators and puncture words of a base."""

    base: Constellation
    transversal: tuple[Word, ...]
    schreier_generators: tuple[Word, ...]
    puncture_words: tuple[Word, ...]
    # (sheet, generator index) -> schreier generator index, tree edges absent
    edge_generator: dict[tuple[int, int], int]

    @property
    def rank(self) -> int:
        return len(self.schreier_generators)


def schreier_data(c: Constellation) -> SchreierData:
    """Present the stabilizer of sheet 0 and the puncture words of the base.

    The transversal is breadth-first shortlex over the alphabet
    x_1, ..., x_{k-1}, x_1^-1, ..., x_{k-1}^-1.  One puncture word arises
    per cycle of each slot, rewritten into Schreier generators.
    """
    base = c.normalized()
    genus = genus_rh(base)
    if genus < 1:
        raise GenusTooSmall(f"base has genus {genus}, need at least 1")
    n = base.degree
    perms = [p.images for p in base.slot_perms()]
    k = len(perms)
    free = perms[: k - 1]
    inverses = [_inverse_raw(p) for p in free]

    # breadth-first Schreier transversal
    transversal: list[Word | None] = [None] * n
    transversal[0] = ()
    tree_edges: set[tuple[int, int]] = set()  # (sheet, generator) positive edges
    queue = deque([0])
    moves = [(i + 1, free[i]) for i in range(k - 1)] + [
        (-(i + 1), inverses[i]) for i in range(k - 1)
    ]
    while queue:
        x = queue.popleft()
        for letter, images in moves:
            y = images[x]
            if transversal[y] is None:
                transversal[y] = transversal[x] + (letter,)
                if letter > 0:
                    tree_edges.add((x, letter))
                else:
                    tree_edges.add((y, -letter))
                queue.append(y)

    edge_generator: dict[tuple[int, int], int] = {}
    generators: list[Word] = []
    for i in range(k - 1):
        for x in range(n):
            if (x, i + 1) in tree_edges:
                continue
            y = free[i][x]
            word = _free_reduce(
                transversal[x] + (i + 1,) + _invert_word(transversal[y])
            )
            edge_generator[(x, i)] = len(generators)
            generators.append(word)

    def rewrite(word: Word) -> Word:
        """Reidemeister rewriting of a stabilizer word into Schreier letters."""
        out: list[int] = []
        sheet = 0
        for letter in word:
            i = abs(letter) - 1
            if letter > 0:
                idx = edge_generator.get((sheet, i))
                if idx is not None:
                    out.append(idx + 1)
                sheet = free[i][sheet]
            else:
                sheet = inverses[i][sheet]
                idx = edge_generator.get((sheet, i))
                if idx is not None:
                    out.append(-(idx + 1))
        if sheet != 0:
            raise AssertionError("rewriting applied to a non-stabilizer word")
        return _free_reduce(tuple(out))

    slot_words: list[Word] = [(i + 1,) for i in range(k - 1)]
    slot_words.append(_invert_word(tuple(range(1, k))))

    punctures: list[Word] = []
    for word, perm in zip(slot_words, base.slot_perms()):
        for cycle in perm.cycles():
            entry = cycle[0]
            loop = (
                transversal[entry]
                + word * len(cycle)
                + _invert_word(transversal[entry])
            )
            punctures.append(rewrite(loop))

    return SchreierData(
        base=base,
        transversal=tuple(transversal),
        schreier_generators=tuple(generators),
        puncture_words=tuple(punctures),
        edge_generator=edge_generator,
    )


def _abelianized_rows(data: SchreierData) -> list[list[int]]:
    rows = []
    for word in data.puncture_words:
        row = [0] * data.rank
        for letter in word:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    return rows


def _integer_kernel_vector(rows: list[list[int]], width: int) -> list[int] | None:
    """A primitive integer vector killed by every row, or None."""
    matrix = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = 1 / matrix[r][col]
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
        if r == len(matrix):
            break
    free_cols = [c for c in range(width) if c not in pivots]
    if not free_cols:
        return None
    col = free_cols[0]
    solution = [Fraction(0)] * width
    solution[col] = Fraction(1)
    for row_idx, pivot_col in enumerate(pivots):
        solution[pivot_col] = -matrix[row_idx][col]
    denominator = math.lcm(*(f.denominator for f in solution))
    integers = [int(f * denominator) for f in solution]
    content = math.gcd(*integers)
    return [x // content for x in integers]


def cyclic_unbranched_extension(c: Constellation, d: int) -> Constellation:
    """Degree d * deg(c) constellation with the same datum and genus d(g-1)+1.

    Finds a surjection of the Schreier generators onto Z/d killing every
    puncture word, then lifts each slot to the (sheet, residue) pairs.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    data = schreier_data(c)
    base = data.base
    rows = _abelianized_rows(data)
    kernel = _integer_kernel_vector(rows, data.rank)
    if kernel is None:
        raise NoSurjection(1, d)
    chi = [x % d for x in kernel]
    image_order = d // math.gcd(d, *chi)
    if image_order != d:
        raise NoSurjection(image_order, d)

    n = base.degree
    perms = [p.images for p in base.slot_perms()]
    k = len(perms)
    free = perms[: k - 1]

    def weight(sheet: int, gen: int) -> int:
        idx = data.edge_generator.get((sheet, gen))
        return 0 if idx is None else chi[idx]

    lifted: list[Permutation] = []
    for i in range(k - 1):
        images = [0] * (n * d)
        for sheet in range(n):
            w = weight(sheet, i)
            target = free[i][sheet]
            for t in range(d):
                images[sheet * d + t] = target * d + (t + w) % d
        lifted.append(Permutation(tuple(images)))

    prod = Permutation.identity(n * d)
    for p in lifted:
        prod = prod * p
    lifted.append(prod.inverse())

    labels = [label for label, _ in base.slots]
    return Constellation(n * d, tuple(zip(labels, lifted)))
