"""Exception types shared across the package.

Every error raised on purpose by this library derives from :class:`NcwreathError`,
so callers (including the CLI) can distinguish our failures from genuine bugs.
"""

from __future__ import annotations

__all__ = [
    "NcwreathError",
    "ValidationError",
    "ShapeError",
    "DomainError",
    "BoundError",
]


class NcwreathError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(NcwreathError, ValueError):
    """Malformed input data: bad JSON payloads, non-partitions, crossing diagrams,
    invalid weights, broken group tables."""


class ShapeError(NcwreathError, ValueError):
    """Dimensions that must agree do not: composition row counts, label tuple
    lengths, mixed-shape map lists."""


class DomainError(NcwreathError, ValueError):
    """Arguments outside an operation's mathematical domain: mixing elements of
    different groups, fusing an empty word, dimensions below the positivity
    threshold, non-delta-form states where one is required."""


class BoundError(NcwreathError):
    """A configured resource bound (point count, matrix size) would be exceeded."""
