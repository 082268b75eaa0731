"""Noncrossing two-row partition diagrams and their operations.

A diagram in ``NC(k, l)`` partitions ``k`` upper points ``u1..uk`` and ``l``
lower points ``l1..ll`` into blocks such that, after placing the points on a
line — upper row left to right, then the lower row bent around the right edge
(i.e. in reversed order ``ll .. l1``) — no two blocks interleave.

The module provides enumeration, the three diagram operations (tensor,
composition, adjoint), and the combinatorial bookkeeping attached to
composition: the count of removed central blocks and the cycle exponent

    cy(p, q) = l + b(qp) + cb(p, q) - b(p) - b(q)

where ``l`` is the number of identified middle points and ``b`` counts blocks.

Everything here is immutable and safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import BoundError, ShapeError, ValidationError

__all__ = [
    "DEFAULT_MAX_POINTS",
    "Point",
    "Partition",
    "CompositionResult",
    "parse_point",
    "is_noncrossing",
    "enumerate_partitions",
    "identity_partition",
    "tensor",
    "compose",
    "adjoint",
    "catalan",
]

#: Soft ceiling on ``k + l`` for enumeration; keeps accidental requests from
#: materializing Catalan-many diagrams beyond desk scale.
DEFAULT_MAX_POINTS = 16

_SIDES = ("u", "l")


class Point(NamedTuple):
    """A single diagram point: ``side`` is ``"u"`` or ``"l"``, ``index`` is 1-based."""

    side: str
    index: int

    @property
    def token(self) -> str:
        return f"{self.side}{self.index}"


def parse_point(token: str) -> Point:
    """Parse a point token such as ``"u3"`` or ``"l12"``."""
    if not isinstance(token, str) or len(token) < 2 or token[0] not in _SIDES:
        raise ValidationError(f"bad point token {token!r}")
    try:
        index = int(token[1:])
    except ValueError:
        raise ValidationError(f"bad point token {token!r}") from None
    if index < 1:
        raise ValidationError(f"point index must be >= 1, got {token!r}")
    return Point(token[0], index)


def _linear_position(point: Point, upper: int, lower: int) -> int:
    """Position of ``point`` on the bent line: ``u1..uk`` then ``ll..l1``."""
    if point.side == "u":
        return point.index - 1
    return upper + (lower - point.index)


def _check_cover(blocks: Sequence[Sequence[Point]], upper: int, lower: int) -> None:
    seen: set[Point] = set()
    for block in blocks:
        if not block:
            raise ValidationError("empty block")
        for pt in block:
            if pt.side not in _SIDES:
                raise ValidationError(f"bad point side {pt.side!r}")
            bound = upper if pt.side == "u" else lower
            if not 1 <= pt.index <= bound:
                raise ValidationError(f"point {pt.token} out of range for NC({upper},{lower})")
            if pt in seen:
                raise ValidationError(f"point {pt.token} appears twice")
            seen.add(pt)
    if len(seen) != upper + lower:
        raise ValidationError(
            f"blocks cover {len(seen)} points, expected {upper + lower}"
        )


def _crossing_free(position_blocks: Sequence[Sequence[int]], total: int) -> bool:
    """Stack test on linearized positions: each block must close before an
    enclosing one resurfaces."""
    label = [0] * total
    last = [0] * len(position_blocks)
    for b, positions in enumerate(position_blocks):
        for pos in positions:
            label[pos] = b
        last[b] = max(positions)
    stack: list[int] = []
    opened = [False] * len(position_blocks)
    for pos in range(total):
        b = label[pos]
        if not opened[b]:
            opened[b] = True
            stack.append(b)
        elif stack[-1] != b:
            return False
        if pos == last[b]:
            stack.pop()
    return True


def is_noncrossing(blocks: Iterable[Iterable[Point]], upper: int, lower: int) -> bool:
    """Whether ``blocks`` (a partition of the points of ``NC(upper, lower)``)
    is noncrossing under the bent-line order.

    Raises :class:`ValidationError` if the blocks do not form a partition of
    exactly the declared point set.
    """
    mat = [tuple(b) for b in blocks]
    _check_cover(mat, upper, lower)
    total = upper + lower
    positions = [
        [_linear_position(pt, upper, lower) for pt in block] for block in mat
    ]
    return _crossing_free(positions, total)


def _point_key(point: Point) -> tuple[int, int]:
    return (0 if point.side == "u" else 1, point.index)


@dataclass(frozen=True)
class Partition:
    """An element of ``NC(upper, lower)`` in canonical form.

    Blocks are stored sorted by their minimal point in the bent-line order;
    within a block, upper points come first (by index), then lower points (by
    index). Construction validates the partition structure and the
    noncrossing property, so every live instance is a genuine diagram.
    """

    upper: int
    lower: int
    blocks: tuple[tuple[Point, ...], ...]

    def __post_init__(self) -> None:
        if self.upper < 0 or self.lower < 0:
            raise ValidationError("row sizes must be nonnegative")
        canonical = _canonical_blocks(self.blocks, self.upper, self.lower)
        object.__setattr__(self, "blocks", canonical)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def points(self) -> int:
        return self.upper + self.lower

    def to_dict(self) -> dict:
        return {
            "upper": self.upper,
            "lower": self.lower,
            "blocks": [[pt.token for pt in block] for block in self.blocks],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Partition":
        if not isinstance(data, dict):
            raise ValidationError("partition payload must be an object")
        try:
            upper = int(data["upper"])
            lower = int(data["lower"])
            raw_blocks = data["blocks"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"partition payload missing fields: {exc}") from None
        if not isinstance(raw_blocks, list):
            raise ValidationError("blocks must be a list of lists of point tokens")
        blocks = []
        for raw in raw_blocks:
            if not isinstance(raw, list):
                raise ValidationError("blocks must be a list of lists of point tokens")
            blocks.append(tuple(parse_point(tok) for tok in raw))
        return cls(upper, lower, tuple(blocks))

    def __str__(self) -> str:
        if not self.blocks:
            return "(empty)"
        return " | ".join(" ".join(pt.token for pt in block) for block in self.blocks)


def _canonical_blocks(
    blocks: Iterable[Iterable[Point]], upper: int, lower: int
) -> tuple[tuple[Point, ...], ...]:
    mat = [tuple(Point(*pt) for pt in block) for block in blocks]
    _check_cover(mat, upper, lower)
    positions = [[_linear_position(pt, upper, lower) for pt in block] for block in mat]
    if not _crossing_free(positions, upper + lower):
        raise ValidationError("blocks cross under the bent-line order")
    order = sorted(range(len(mat)), key=lambda b: min(positions[b]))
    return tuple(
        tuple(sorted(mat[b], key=_point_key)) for b in order
    )


class CompositionResult(NamedTuple):
    """Outcome of ``compose(p, q)``: the diagram ``qp``, the number of removed
    middle-only blocks, and the cycle exponent ``cy(p, q)``."""

    result: Partition
    central_blocks: int
    cycles: int


_CATALAN: list[int] = [1]


def catalan(n: int) -> int:
    """The n-th Catalan number, by the convolution recurrence."""
    if n < 0:
        raise ValidationError("catalan index must be nonnegative")
    while len(_CATALAN) <= n:
        m = len(_CATALAN)
        _CATALAN.append(sum(_CATALAN[i] * _CATALAN[m - 1 - i] for i in range(m)))
    return _CATALAN[n]


def _linear_noncrossing(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All noncrossing set partitions of an increasing tuple of line positions."""
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for r in range(len(rest) + 1):
        for chosen in itertools.combinations(rest, r):
            block = (first, *chosen)
            # Everything not in the block falls into the gaps between
            # consecutive block members (or after the last); blocks may not
            # straddle a gap boundary without crossing.
            segments: list[list[int]] = [[] for _ in range(len(block))]
            chosen_set = set(chosen)
            for x in rest:
                if x in chosen_set:
                    continue
                lo, hi = 0, len(block)
                while lo < hi:  # rightmost block member below x
                    mid = (lo + hi) // 2
                    if block[mid] < x:
                        lo = mid + 1
                    else:
                        hi = mid
                segments[lo - 1].append(x)
            for combo in itertools.product(
                *(_linear_noncrossing(tuple(seg)) for seg in segments)
            ):
                yield (block,) + tuple(b for part in combo for b in part)


def _from_linear(upper: int, lower: int, blocks: Iterable[Iterable[int]]) -> Partition:
    def to_point(pos: int) -> Point:
        if pos < upper:
            return Point("u", pos + 1)
        return Point("l", lower - (pos - upper))

    return Partition(
        upper, lower, tuple(tuple(to_point(pos) for pos in block) for block in blocks)
    )


def enumerate_partitions(
    upper: int, lower: int, *, max_points: int = DEFAULT_MAX_POINTS
) -> list[Partition]:
    """Every element of ``NC(upper, lower)`` in a fixed canonical order.

    The count is the Catalan number of ``upper + lower``. Raises
    :class:`BoundError` when the point total exceeds ``max_points``.
    """
    if upper < 0 or lower < 0:
        raise ValidationError("row sizes must be nonnegative")
    m = upper + lower
    if m > max_points:
        raise BoundError(f"{m} points exceeds the configured bound of {max_points}")
    linear = [tuple(sorted(blocks)) for blocks in _linear_noncrossing(tuple(range(m)))]
    linear.sort()
    return [_from_linear(upper, lower, blocks) for blocks in linear]


def identity_partition(k: int) -> Partition:
    """The identity diagram of ``NC(k, k)``: each ``u_i`` paired with ``l_i``."""
    return Partition(
        k, k, tuple((Point("u", i), Point("l", i)) for i in range(1, k + 1))
    )


def tensor(p: Partition, q: Partition) -> Partition:
    """Horizontal concatenation: ``q``'s points are shifted past ``p``'s."""
    shifted = tuple(
        tuple(
            Point(pt.side, pt.index + (p.upper if pt.side == "u" else p.lower))
            for pt in block
        )
        for block in q.blocks
    )
    return Partition(p.upper + q.upper, p.lower + q.lower, p.blocks + shifted)


def adjoint(p: Partition) -> Partition:
    """Reflection across the horizontal axis: rows swap, indices keep."""
    flipped = tuple(
        tuple(Point("l" if pt.side == "u" else "u", pt.index) for pt in block)
        for block in p.blocks
    )
    return Partition(p.lower, p.upper, flipped)


class _UnionFind:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def compose(p: Partition, q: Partition) -> CompositionResult:
    """Stack ``q`` below ``p``, identifying ``p``'s lower row with ``q``'s
    upper row, and read off the resulting diagram ``qp``.

    Middle-only connected components vanish from the diagram; their count is
    returned alongside the cycle exponent ``cy(p, q)``.
    """
    if p.lower != q.upper:
        raise ShapeError(
            f"cannot compose: p has {p.lower} lower points, q has {q.upper} upper points"
        )
    k, mid, w = p.upper, p.lower, q.lower
    uf = _UnionFind(k + mid + w)

    def p_node(pt: Point) -> int:
        return pt.index - 1 if pt.side == "u" else k + pt.index - 1

    def q_node(pt: Point) -> int:
        return k + pt.index - 1 if pt.side == "u" else k + mid + pt.index - 1

    for block in p.blocks:
        first = p_node(block[0])
        for pt in block[1:]:
            uf.union(first, p_node(pt))
    for block in q.blocks:
        first = q_node(block[0])
        for pt in block[1:]:
            uf.union(first, q_node(pt))

    components: dict[int, list[Point]] = {}
    middle_roots: set[int] = set()
    for i in range(k):
        components.setdefault(uf.find(i), []).append(Point("u", i + 1))
    for j in range(w):
        components.setdefault(uf.find(k + mid + j), []).append(Point("l", j + 1))
    for t in range(mid):
        middle_roots.add(uf.find(k + t))

    central = len(middle_roots - set(components))
    result = Partition(k, w, tuple(tuple(block) for block in components.values()))
    cycles = mid + result.block_count + central - p.block_count - q.block_count
    return CompositionResult(result, central, cycles)
