"""Linear maps attached to noncrossing diagrams over a multimatrix algebra.

A diagram ``p`` in ``NC(k, l)`` induces a map from the k-th to the l-th tensor
power of the algebra. In the normalized matrix-unit basis its entries factor
over the blocks of ``p``: each block contributes the state applied to
(product of its lower basis vectors)* times (product of its upper basis
vectors), empty products meaning the algebra unit.

Matrices are dense real float64 arrays, rows indexed by lower multi-indices
and columns by upper multi-indices, both in row-major canonical order (block,
then row, then column within each tensor factor; first factor most
significant).

The headline identities, checked numerically by the test suite:

* tensor product of diagrams  ->  Kronecker product of matrices (exact);
* adjoint diagram             ->  transposed matrix (entries are real);
* composition of diagrams     ->  matrix product, up to the factor
  ``delta ** -cy(p, q)`` when the state is a delta-form.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import BasisIndex, MultiMatrixAlgebra
from .errors import BoundError, DomainError, ShapeError
from .partitions import DEFAULT_MAX_POINTS, Partition, catalan, compose

__all__ = [
    "DEFAULT_MAX_ENTRIES",
    "GRAM_RANK_THRESHOLD",
    "TensorMap",
    "delta_coefficient",
    "build_map",
    "verify_composition",
    "gram_rank",
    "hom_dimension",
    "multi_index",
]

#: Ceiling on the entry count of a single map matrix.
DEFAULT_MAX_ENTRIES = 1 << 24

#: Relative singular-value cutoff used by :func:`gram_rank`.
GRAM_RANK_THRESHOLD = 1e-7

_ONE = "one"
_ZERO = "zero"


def _mul_chain(algebra: MultiMatrixAlgebra, indices: Sequence[BasisIndex]):
    """Product of normalized basis vectors as ``(coef, block, row, col)``,
    or the markers for the empty product / the zero element."""
    acc = _ONE
    for ix in indices:
        coef = algebra.normalization(ix)
        if acc == _ONE:
            acc = (coef, ix.block, ix.row, ix.col)
            continue
        c, b, i, j = acc
        if b != ix.block or j != ix.row:
            return _ZERO
        acc = (c * coef, b, i, ix.col)
    return acc


def _psi(algebra: MultiMatrixAlgebra, elem) -> float:
    if elem == _ONE:
        return 1.0
    if elem == _ZERO:
        return 0.0
    c, b, i, j = elem
    return c * algebra.weight(b, i) if i == j else 0.0


def _star(elem):
    if elem in (_ONE, _ZERO):
        return elem
    c, b, i, j = elem
    return (c, b, j, i)


def _product(elem_a, elem_b):
    if _ZERO in (elem_a, elem_b):
        return _ZERO
    if elem_a == _ONE:
        return elem_b
    if elem_b == _ONE:
        return elem_a
    ca, ba, ia, ja = elem_a
    cb, bb, ib, jb = elem_b
    if ba != bb or ja != ib:
        return _ZERO
    return (ca * cb, ba, ia, jb)


def delta_coefficient(
    algebra: MultiMatrixAlgebra,
    p: Partition,
    upper: Sequence[BasisIndex],
    lower: Sequence[BasisIndex],
) -> float:
    """Matrix entry of the map of ``p`` at one upper / lower assignment of
    normalized basis vectors: the product over blocks of the state applied to
    (lower product)* (upper product)."""
    if len(upper) != p.upper:
        raise ShapeError(f"expected {p.upper} upper indices, got {len(upper)}")
    if len(lower) != p.lower:
        raise ShapeError(f"expected {p.lower} lower indices, got {len(lower)}")
    for ix in itertools.chain(upper, lower):
        algebra.check_index(ix)
    value = 1.0
    for block in p.blocks:
        ups = [upper[pt.index - 1] for pt in block if pt.side == "u"]
        downs = [lower[pt.index - 1] for pt in block if pt.side == "l"]
        factor = _psi(
            algebra,
            _product(_star(_mul_chain(algebra, downs)), _mul_chain(algebra, ups)),
        )
        value *= factor
        if value == 0.0:
            return 0.0
    return value


@functools.lru_cache(maxsize=None)
def _block_factor(
    algebra: MultiMatrixAlgebra, n_upper: int, n_lower: int
) -> np.ndarray:
    """Dense tensor of the per-block coefficients for a block with the given
    numbers of upper and lower legs. Axes: lower legs left to right, then
    upper legs left to right, each running over the whole basis.

    Nonzero entries live on chains inside a single matrix block: consecutive
    legs share their inner matrix entry, and the state ties the two free ends
    of the upper chain to those of the lower chain.
    """
    n = algebra.dim
    u, d = n_upper, n_lower
    out = np.zeros((n,) * (d + u))
    for a, size in enumerate(algebra.block_sizes, start=1):
        q = algebra.weights[a - 1]
        inv_sqrt = [x**-0.5 for x in q]

        def pos(row: int, col: int) -> int:
            return algebra.basis_position(BasisIndex(a, row + 1, col + 1))

        if u and d:
            for xs in itertools.product(range(size), repeat=u + 1):
                c_up = 1.0
                for t in range(1, u + 1):
                    c_up *= inv_sqrt[xs[t]]
                upper_pos = tuple(pos(xs[t - 1], xs[t]) for t in range(1, u + 1))
                for mid in itertools.product(range(size), repeat=d - 1):
                    ys = (xs[0], *mid, xs[-1])
                    c_dn = 1.0
                    for t in range(1, d + 1):
                        c_dn *= inv_sqrt[ys[t]]
                    lower_pos = tuple(pos(ys[t - 1], ys[t]) for t in range(1, d + 1))
                    out[lower_pos + upper_pos] = c_up * c_dn * q[ys[-1]]
        elif u:
            for free in itertools.product(range(size), repeat=u):
                xs = (*free, free[0])
                c_up = 1.0
                for t in range(1, u + 1):
                    c_up *= inv_sqrt[xs[t]]
                out[tuple(pos(xs[t - 1], xs[t]) for t in range(1, u + 1))] = (
                    c_up * q[xs[0]]
                )
        else:
            for free in itertools.product(range(size), repeat=d):
                ys = (*free, free[0])
                c_dn = 1.0
                for t in range(1, d + 1):
                    c_dn *= inv_sqrt[ys[t]]
                out[tuple(pos(ys[t - 1], ys[t]) for t in range(1, d + 1))] = (
                    c_dn * q[ys[0]]
                )
    return out


@dataclass(eq=False)
class TensorMap:
    """The matrix of one diagram over one algebra."""

    algebra: MultiMatrixAlgebra
    partition: Partition
    matrix: np.ndarray

    @property
    def upper(self) -> int:
        return self.partition.upper

    @property
    def lower(self) -> int:
        return self.partition.lower


def build_map(
    algebra: MultiMatrixAlgebra,
    p: Partition,
    *,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> TensorMap:
    """Assemble the matrix of ``p`` as an outer product of per-block factors.

    Raises :class:`BoundError` when the matrix would exceed ``max_entries``
    entries.
    """
    n = algebra.dim
    k, l = p.upper, p.lower
    if n ** (k + l) > max_entries:
        raise BoundError(
            f"map matrix would hold {n}^{k + l} entries, over the bound {max_entries}"
        )
    if not p.blocks:
        matrix = np.ones((1, 1))
        return TensorMap(algebra, p, matrix)
    operands = []
    for block in p.blocks:
        ups = [pt.index for pt in block if pt.side == "u"]
        downs = [pt.index for pt in block if pt.side == "l"]
        factor = _block_factor(algebra, len(ups), len(downs))
        axes = [j - 1 for j in downs] + [l + i - 1 for i in ups]
        operands.extend((factor, axes))
    tensor = np.einsum(*operands, list(range(l + k)))
    return TensorMap(algebra, p, np.asarray(tensor).reshape(n**l, n**k))


def _build_map_by_definition(
    algebra: MultiMatrixAlgebra, p: Partition
) -> np.ndarray:
    """Entry-by-entry assembly straight from :func:`delta_coefficient`;
    quadratically slower, kept as the reference the fast path is tested against."""
    basis = algebra.basis_indices()
    rows = list(itertools.product(basis, repeat=p.lower))
    cols = list(itertools.product(basis, repeat=p.upper))
    out = np.zeros((len(rows), len(cols)))
    for r, lower in enumerate(rows):
        for c, upper in enumerate(cols):
            out[r, c] = delta_coefficient(algebra, p, upper, lower)
    return out


def multi_index(
    algebra: MultiMatrixAlgebra, power: int, position: int
) -> tuple[BasisIndex, ...]:
    """The tuple of basis indices a row/column position denotes, first tensor
    factor most significant."""
    n = algebra.dim
    if not 0 <= position < n**power:
        raise DomainError(f"position {position} out of range for power {power}")
    basis = algebra.basis_indices()
    digits = []
    for _ in range(power):
        position, rem = divmod(position, n)
        digits.append(basis[rem])
    return tuple(reversed(digits))


def verify_composition(
    algebra: MultiMatrixAlgebra,
    p: Partition,
    q: Partition,
    *,
    t_p: Optional[TensorMap] = None,
    t_q: Optional[TensorMap] = None,
    t_qp: Optional[TensorMap] = None,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> float:
    """Max absolute deviation between the map of ``qp`` and the rescaled
    product ``delta**-cy * (map of q) @ (map of p)``.

    Requires a delta-form state; prebuilt maps may be passed to skip
    reassembly.
    """
    delta = algebra.is_delta_form()
    if delta is None:
        raise DomainError("composition rescaling needs a delta-form state")
    qp, _, cycles = compose(p, q)
    if t_p is None:
        t_p = build_map(algebra, p, max_entries=max_entries)
    if t_q is None:
        t_q = build_map(algebra, q, max_entries=max_entries)
    if t_qp is None:
        t_qp = build_map(algebra, qp, max_entries=max_entries)
    product = (delta ** float(-cycles)) * (t_q.matrix @ t_p.matrix)
    return float(np.max(np.abs(t_qp.matrix - product)))


def gram_rank(
    maps: Sequence[TensorMap], *, threshold: float = GRAM_RANK_THRESHOLD
) -> int:
    """Rank of the span of the given maps, via the Gram matrix of pairwise
    trace inner products; singular values below ``threshold`` times the
    largest are treated as zero."""
    if not maps:
        return 0
    first = maps[0]
    for t in maps[1:]:
        if t.matrix.shape != first.matrix.shape or t.algebra != first.algebra:
            raise ShapeError("gram_rank needs maps of one shape over one algebra")
    stacked = np.stack([t.matrix.reshape(-1) for t in maps])
    gram = stacked @ stacked.T
    singular = np.linalg.svd(gram, compute_uv=False)
    if singular[0] <= 0.0:
        return 0
    return int(np.sum(singular > threshold * singular[0]))


def hom_dimension(
    upper: int, lower: int, *, max_points: int = DEFAULT_MAX_POINTS
) -> int:
    """Number of diagrams in ``NC(upper, lower)`` — the dimension their maps
    span over any algebra of dimension at least four."""
    if upper < 0 or lower < 0:
        raise DomainError("row sizes must be nonnegative")
    if upper + lower > max_points:
        raise BoundError(
            f"{upper + lower} points exceeds the configured bound of {max_points}"
        )
    return catalan(upper + lower)
