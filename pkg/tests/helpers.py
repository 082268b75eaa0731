"""Independent oracles shared by the test modules.

Everything here is written from the definitions, deliberately avoiding the
library's own algorithms, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import itertools

import numpy as np

from ncwreath.algebra import MultiMatrixAlgebra
from ncwreath.partitions import Partition, Point, parse_point


def make_partition(upper: int, lower: int, *blocks: str) -> Partition:
    """Shorthand: each block is a space-separated string of point tokens."""
    return Partition(
        upper, lower, tuple(tuple(parse_point(t) for t in b.split()) for b in blocks)
    )


def all_set_partitions(items):
    """Every set partition of ``items`` (a sequence), as lists of lists."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in all_set_partitions(rest):
        yield [[first]] + [list(b) for b in sub]
        for i in range(len(sub)):
            yield (
                [list(b) for b in sub[:i]]
                + [[first] + list(sub[i])]
                + [list(b) for b in sub[i + 1 :]]
            )


def interleaves(a_positions, b_positions) -> bool:
    """Whether two blocks of line positions interleave (pattern ABAB/BABA)."""
    merged = sorted([(p, 0) for p in a_positions] + [(p, 1) for p in b_positions])
    changes = sum(1 for x, y in zip(merged, merged[1:]) if x[1] != y[1])
    return changes >= 3


def bent_line_position(point: Point, upper: int, lower: int) -> int:
    if point.side == "u":
        return point.index - 1
    return upper + (lower - point.index)


def noncrossing_by_pairs(blocks, upper: int, lower: int) -> bool:
    """Quadratic pairwise-interleaving test, independent of the stack scan."""
    positioned = [
        [bent_line_position(pt, upper, lower) for pt in block] for block in blocks
    ]
    for a, b in itertools.combinations(positioned, 2):
        if interleaves(a, b):
            return False
    return True


def brute_force_nc(upper: int, lower: int) -> set[Partition]:
    """All of NC(upper, lower) by filtering every set partition of the points."""
    points = [Point("u", i) for i in range(1, upper + 1)] + [
        Point("l", j) for j in range(1, lower + 1)
    ]
    out = set()
    for blocks in all_set_partitions(points):
        if noncrossing_by_pairs(blocks, upper, lower):
            out.add(Partition(upper, lower, tuple(tuple(b) for b in blocks)))
    return out


class DenseModel:
    """Concrete matrix model of a multimatrix algebra with its state.

    Elements are tuples of per-block complex matrices; the state is the
    weighted trace. Used to check symbolic basis arithmetic numerically.
    """

    def __init__(self, algebra: MultiMatrixAlgebra) -> None:
        self.algebra = algebra

    def unit_matrix(self, index) -> tuple[np.ndarray, ...]:
        blocks = []
        for a, size in enumerate(self.algebra.block_sizes, start=1):
            mat = np.zeros((size, size))
            if a == index.block:
                mat[index.row - 1, index.col - 1] = 1.0
            blocks.append(mat)
        return tuple(blocks)

    def normalized_basis_matrix(self, index) -> tuple[np.ndarray, ...]:
        scale = self.algebra.weight(index.block, index.col) ** -0.5
        return tuple(scale * m for m in self.unit_matrix(index))

    def one(self) -> tuple[np.ndarray, ...]:
        return tuple(np.eye(size) for size in self.algebra.block_sizes)

    @staticmethod
    def multiply(x, y):
        return tuple(a @ b for a, b in zip(x, y))

    @staticmethod
    def star(x):
        return tuple(a.conj().T for a in x)

    def state(self, x) -> float:
        total = 0.0
        for a, mat in enumerate(x, start=1):
            q = np.diag([self.algebra.weight(a, i + 1) for i in range(mat.shape[0])])
            total += np.trace(q @ mat)
        return float(total)

    def product_of_normalized(self, indices):
        out = self.one()
        for ix in indices:
            out = self.multiply(out, self.normalized_basis_matrix(ix))
        return out


def symmetric_group_dict(n: int) -> dict:
    """Multiplication-table payload for the symmetric group on ``range(n)``.

    Elements are named by one-line notation ("120" sends 0->1, 1->2, 2->0)
    except the identity, which is named "e"; composition applies the right
    factor first: (a*b)(i) = a[b[i]].
    """
    perms = sorted(itertools.permutations(range(n)))
    names = ["e" if p == tuple(range(n)) else "".join(map(str, p)) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms
    ]
    return {"elements": names, "identity": "e", "table": table}
