"""
Axis-aligned integration domains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from ..errors import InvalidDimensionError

ArrayLike = Union[Sequence[float], np.ndarray]


@dataclass(frozen=True, eq=False)
class Domain:
    """
    Closed hyper-rectangle ``[lower, upper]`` in D dimensions.

    Used both for the whole integration domain and for the bounds of
    every container in a tree.
    """

    lower: np.ndarray
    upper: np.ndarray
    _volume: float = field(init=False, repr=False)

    def __init__(self, lower: ArrayLike, upper: ArrayLike):
        lo = np.array(lower, dtype=float).reshape(-1)
        hi = np.array(upper, dtype=float).reshape(-1)
        if lo.size == 0 or lo.shape != hi.shape:
            raise InvalidDimensionError(
                f"lower/upper must be non-empty and equally long, got {lo.size} and {hi.size}"
            )
        if not np.all(lo < hi):
            raise ValueError(f"Domain requires lower < upper on every axis: {lo} vs {hi}")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "_volume", float(np.prod(hi - lo)))

    @classmethod
    def cube(cls, low: float, high: float, dim: int) -> Domain:
        """The hyper-cube ``[low, high]^dim``."""
        if dim < 1:
            raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
        return cls(np.full(dim, low), np.full(dim, high))

    @property
    def dim(self) -> int:
        return int(self.lower.size)

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def volume(self) -> float:
        return self._volume

    def contains(self, x: np.ndarray) -> np.ndarray:
        """
        Closed-box membership test.

        Args:
            x: A single D-vector or an (n, D) array

        Returns:
            Boolean scalar array for a vector, boolean (n,) array otherwise
        """
        pts = np.asarray(x, dtype=float)
        return np.all((pts >= self.lower) & (pts <= self.upper), axis=-1)

    def with_axis(self, dim: int, low: float, high: float) -> Domain:
        """Copy with axis ``dim`` replaced by ``[low, high]``."""
        lo = self.lower.copy()
        hi = self.upper.copy()
        lo[dim] = low
        hi[dim] = high
        return Domain(lo, hi)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Domain):
            return NotImplemented
        return bool(
            np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)
        )

    def __hash__(self) -> int:
        return hash((self.lower.tobytes(), self.upper.tobytes()))

    def __repr__(self) -> str:
        return f"Domain(lower={self.lower.tolist()}, upper={self.upper.tolist()})"
