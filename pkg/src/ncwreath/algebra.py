"""Finite-dimensional multimatrix algebras carrying a faithful state.

An algebra is a direct sum of full matrix blocks; the state is a weighted
trace with strictly positive diagonal weights summing to one. The key derived
quantity per block is the inverse-weight trace: the state is a delta-form —
the multiplication map composed with its adjoint is a scalar — exactly when
that trace takes the same value on every block, and the coarsest splitting of
the blocks into renormalizable delta-form factors groups blocks by that raw
value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple, Optional, Sequence

from .errors import DomainError, ValidationError

__all__ = [
    "BasisIndex",
    "MultiMatrixAlgebra",
    "DeltaFactor",
    "DEFAULT_TOLERANCE",
]

DEFAULT_TOLERANCE = 1e-9


class BasisIndex(NamedTuple):
    """Matrix-unit coordinates ``e^block_{row,col}``; all fields 1-based."""

    block: int
    row: int
    col: int


@dataclass(frozen=True)
class MultiMatrixAlgebra:
    """A direct sum of matrix blocks with a weighted-trace state.

    ``block_sizes[a]`` is the side length of block ``a+1``; ``weights[a]`` its
    diagonal state weights. Weights must be strictly positive and sum to one
    across the whole algebra.
    """

    block_sizes: tuple[int, ...]
    weights: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.block_sizes)
        weights = tuple(tuple(float(x) for x in row) for row in self.weights)
        object.__setattr__(self, "block_sizes", sizes)
        object.__setattr__(self, "weights", weights)
        if not sizes:
            raise ValidationError("algebra needs at least one block")
        if any(s < 1 for s in sizes):
            raise ValidationError("block sizes must be >= 1")
        if len(weights) != len(sizes):
            raise ValidationError("one weight row per block required")
        for size, row in zip(sizes, weights):
            if len(row) != size:
                raise ValidationError(
                    f"weight row of length {len(row)} for a block of size {size}"
                )
            if any(not (x > 0.0) for x in row):
                raise ValidationError("state weights must be strictly positive")
        total = sum(x for row in weights for x in row)
        if abs(total - 1.0) > DEFAULT_TOLERANCE:
            raise ValidationError(f"state weights sum to {total}, expected 1")

    # -- structure ---------------------------------------------------------

    @property
    def block_count(self) -> int:
        return len(self.block_sizes)

    @property
    def dim(self) -> int:
        return sum(s * s for s in self.block_sizes)

    def basis_indices(self) -> list[BasisIndex]:
        """All matrix-unit coordinates in canonical order: block, row, column."""
        out = []
        for a, size in enumerate(self.block_sizes, start=1):
            for i in range(1, size + 1):
                for j in range(1, size + 1):
                    out.append(BasisIndex(a, i, j))
        return out

    def check_index(self, x: BasisIndex) -> BasisIndex:
        b, i, j = x
        if not 1 <= b <= self.block_count:
            raise DomainError(f"block {b} out of range")
        size = self.block_sizes[b - 1]
        if not (1 <= i <= size and 1 <= j <= size):
            raise DomainError(f"entry ({i},{j}) out of range for block of size {size}")
        return BasisIndex(b, i, j)

    def basis_position(self, x: BasisIndex) -> int:
        """Position of ``x`` within :meth:`basis_indices` order."""
        b, i, j = self.check_index(x)
        offset = sum(s * s for s in self.block_sizes[: b - 1])
        size = self.block_sizes[b - 1]
        return offset + (i - 1) * size + (j - 1)

    def weight(self, block: int, row: int) -> float:
        return self.weights[block - 1][row - 1]

    # -- state and products --------------------------------------------------

    def state_value(self, x: BasisIndex) -> float:
        """The state on the matrix unit ``x``: weight of the row if diagonal, else 0."""
        b, i, j = self.check_index(x)
        return self.weight(b, i) if i == j else 0.0

    def normalization(self, x: BasisIndex) -> float:
        """Scale turning the matrix unit ``x`` into a unit vector: state(e_cc)^-1/2."""
        b, _, j = self.check_index(x)
        return self.weight(b, j) ** -0.5

    def mul_basis(
        self, x: BasisIndex, y: BasisIndex
    ) -> Optional[tuple[float, BasisIndex]]:
        """Product of two normalized basis vectors, as ``(coefficient, index)``;
        ``None`` when the product vanishes (different blocks or mismatched
        inner entries)."""
        bx, ix, jx = self.check_index(x)
        by, iy, jy = self.check_index(y)
        if bx != by or jx != iy:
            return None
        return (self.weight(bx, jx) ** -0.5, BasisIndex(bx, ix, jy))

    def inner_product(
        self, x: BasisIndex, y: BasisIndex, *, normalized: bool = True
    ) -> float:
        """State-induced inner product of two basis vectors; the normalized
        basis is orthonormal, matrix units have squared length state(e_cc)."""
        self.check_index(x)
        self.check_index(y)
        if x != y:
            return 0.0
        return 1.0 if normalized else self.weight(x.block, x.col)

    # -- delta-form structure ------------------------------------------------

    def block_inverse_traces(self) -> tuple[float, ...]:
        """Per block, the trace of the inverted weight matrix."""
        return tuple(sum(1.0 / x for x in row) for row in self.weights)

    def is_delta_form(self, tolerance: float = DEFAULT_TOLERANCE) -> Optional[float]:
        """The common inverse-weight trace if the state is a delta-form
        (all blocks agree within relative ``tolerance``), else ``None``."""
        traces = self.block_inverse_traces()
        lo, hi = min(traces), max(traces)
        if hi - lo > tolerance * max(1.0, abs(hi)):
            return None
        return sum(traces) / len(traces)

    def block_mass(self, block: int) -> float:
        return sum(self.weights[block - 1])

    def decompose_by_delta(
        self, tolerance: float = DEFAULT_TOLERANCE
    ) -> list["DeltaFactor"]:
        """Coarsest splitting into delta-form factors.

        Blocks whose inverse-weight traces agree (within relative
        ``tolerance``) are grouped; each group's state is renormalized to mass
        one, which scales every member trace by the group mass and yields the
        factor's delta. Factors are returned sorted by delta. The grouping
        depends only on the traces, so permuting blocks permutes factors.
        """
        traces = self.block_inverse_traces()
        order = sorted(range(self.block_count), key=lambda a: traces[a])
        groups: list[list[int]] = [[order[0]]]
        for a in order[1:]:
            prev = groups[-1][-1]
            scale = max(1.0, abs(traces[a]))
            if traces[a] - traces[prev] <= tolerance * scale:
                groups[-1].append(a)
            else:
                groups.append([a])
        factors = []
        for group in groups:
            group.sort()
            mass = sum(self.block_mass(a + 1) for a in group)
            sizes = tuple(self.block_sizes[a] for a in group)
            weights = tuple(
                tuple(x / mass for x in self.weights[a]) for a in group
            )
            sub = MultiMatrixAlgebra(sizes, weights)
            delta = sum(mass * traces[a] for a in group) / len(group)
            factors.append(DeltaFactor(sub, delta, tuple(a + 1 for a in group)))
        factors.sort(key=lambda f: (f.delta, f.block_indices))
        return factors

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "blocks": [
                {"size": s, "q": list(row)}
                for s, row in zip(self.block_sizes, self.weights)
            ]
        }

    @classmethod
    def from_dict(cls, data: Any) -> "MultiMatrixAlgebra":
        if not isinstance(data, dict) or "blocks" not in data:
            raise ValidationError("algebra payload must be an object with 'blocks'")
        blocks = data["blocks"]
        if not isinstance(blocks, list):
            raise ValidationError("'blocks' must be a list")
        sizes, weights = [], []
        for entry in blocks:
            if not isinstance(entry, dict) or "size" not in entry or "q" not in entry:
                raise ValidationError("each block needs 'size' and 'q'")
            try:
                sizes.append(int(entry["size"]))
                weights.append(tuple(float(x) for x in entry["q"]))
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"bad block entry: {exc}") from None
        return cls(tuple(sizes), tuple(weights))


class DeltaFactor(NamedTuple):
    """One factor of the delta-form decomposition: the renormalized algebra,
    its delta value, and the 1-based indices of the member blocks."""

    algebra: MultiMatrixAlgebra
    delta: float
    block_indices: tuple[int, ...]
