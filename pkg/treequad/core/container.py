"""
Containers: axis-aligned boxes holding the samples that fall inside them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from ..errors import InvalidCutError
from ..problems import Domain


@dataclass(frozen=True)
class AxialCut:
    """Hyperplane ``x[dim] = threshold`` perpendicular to one coordinate axis."""

    dim: int
    threshold: float


@dataclass(eq=False)
class Container:
    """
    One node of the regression tree.

    ``X`` is an (n, D) array of sample locations inside ``bounds`` and ``Y``
    the aligned integrand values. Containers with no samples are legal.
    """

    bounds: Domain
    X: np.ndarray
    Y: np.ndarray
    depth: int = 0
    id: int = 0

    def __post_init__(self) -> None:
        self.X = np.asarray(self.X, dtype=float).reshape(-1, self.bounds.dim)
        self.Y = np.asarray(self.Y, dtype=float).reshape(-1)
        if self.X.shape[0] != self.Y.shape[0]:
            raise ValueError(
                f"container {self.id}: {self.X.shape[0]} locations, {self.Y.size} values"
            )

    @property
    def n_samples(self) -> int:
        return int(self.Y.shape[0])

    @property
    def dim(self) -> int:
        return self.bounds.dim

    def volume(self) -> float:
        return self.bounds.volume()

    def inaccuracy(self) -> float:
        """Range of Y; 0 for containers holding fewer than two samples."""
        if self.n_samples <= 1:
            return 0.0
        return float(self.Y.max() - self.Y.min())

    def with_sample(self, x: np.ndarray, y: float) -> Container:
        """Copy holding one extra sample."""
        return Container(
            bounds=self.bounds,
            X=np.vstack([self.X, np.asarray(x, dtype=float).reshape(1, -1)]),
            Y=np.append(self.Y, y),
            depth=self.depth,
            id=self.id,
        )

    def validate(self) -> None:
        """Check the sample containment invariant; raises ValueError on violation."""
        if self.n_samples and not np.all(self.bounds.contains(self.X)):
            raise ValueError(f"container {self.id} holds samples outside its bounds")


def split(
    container: Container, cut: AxialCut, ids: Optional[Iterator[int]] = None
) -> Tuple[Container, Container]:
    """
    Partition a container along an axial cut.

    Samples with ``x[dim] < threshold`` go left, the rest (including ties)
    go right.

    Args:
        container: Container to split
        cut: Cut strictly inside the container bounds
        ids: Source of child ids; heap numbering (2i+1, 2i+2) when omitted

    Returns:
        (left, right) children one level deeper

    Raises:
        InvalidCutError: threshold on or outside the bounds, or a bad axis
    """
    bounds = container.bounds
    if not 0 <= cut.dim < bounds.dim:
        raise InvalidCutError(f"axis {cut.dim} outside 0..{bounds.dim - 1}")
    low = float(bounds.lower[cut.dim])
    high = float(bounds.upper[cut.dim])
    if not low < cut.threshold < high:
        raise InvalidCutError(
            f"threshold {cut.threshold} not strictly inside [{low}, {high}] on axis {cut.dim}"
        )

    if ids is None:
        left_id, right_id = 2 * container.id + 1, 2 * container.id + 2
    else:
        left_id, right_id = next(ids), next(ids)

    goes_left = container.X[:, cut.dim] < cut.threshold
    goes_right = ~goes_left
    depth = container.depth + 1
    left = Container(
        bounds=bounds.with_axis(cut.dim, low, cut.threshold),
        X=container.X[goes_left],
        Y=container.Y[goes_left],
        depth=depth,
        id=left_id,
    )
    right = Container(
        bounds=bounds.with_axis(cut.dim, cut.threshold, high),
        X=container.X[goes_right],
        Y=container.Y[goes_right],
        depth=depth,
        id=right_id,
    )
    return left, right
