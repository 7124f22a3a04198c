"""
Split rules: choose the axial cut for a container.

MinSSE searches every midpoint between consecutive distinct coordinates on
every axis (the N x D candidate set) for the cut with the smallest summed
within-child squared error of Y. KD cuts the axis of largest coordinate
variance at its median. The random rule is a control.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..config import settings
from ..errors import DegenerateContainerError
from .container import AxialCut, Container


class SplitRule(str, Enum):
    """Split rules (CLI ``--split``)."""

    MINSSE = "minsse"
    KD = "kd"
    RANDOM = "random"


@dataclass(frozen=True)
class SplitDecision:
    cut: AxialCut
    score: float
    rule: SplitRule


def sse(values: np.ndarray) -> float:
    """Sum of squared deviations from the mean; 0 for empty input."""
    if values.size == 0:
        return 0.0
    return float(((values - values.mean()) ** 2).sum())


def split_score(container: Container, cut: AxialCut) -> float:
    """SSE_left + SSE_right of Y for a cut, computed directly from the children."""
    left = container.X[:, cut.dim] < cut.threshold
    return sse(container.Y[left]) + sse(container.Y[~left])


def _midpoint(a: float, b: float) -> float:
    mid = a + 0.5 * (b - a)
    # adjacent floats: the midpoint can round onto a, which would move a to the right child
    return b if mid <= a else mid


def min_sse_axial(container: Container) -> SplitDecision:
    """
    Exhaustive MinSSE search over axial cuts.

    One sorted sweep per axis with prefix sums of centered Y gives the score
    of every candidate at once. Candidates within SSE_TIE_TOLERANCE of the
    best (relative to the parent SSE) count as ties and resolve to the lowest
    axis, then the lowest threshold. The returned score is recomputed directly
    from the chosen children.

    Raises:
        DegenerateContainerError: fewer than 2 samples, or no axis with 2
            distinct coordinates
    """
    X, Y = container.X, container.Y
    n, dim = X.shape
    if n < 2:
        raise DegenerateContainerError(f"container {container.id} has {n} sample(s)")

    order = np.argsort(X, axis=0, kind="stable")
    xs = np.take_along_axis(X, order, axis=0)
    distinct = xs[1:] > xs[:-1]  # (n-1, D): candidate k sits between rows k and k+1
    if not distinct.any():
        raise DegenerateContainerError(f"all {n} samples of container {container.id} coincide")

    if Y.max() == Y.min():
        scores = np.zeros((n - 1, dim))
        parent_sse = 0.0
    else:
        centered = Y - Y.mean()
        ys = centered[order]
        s1 = np.cumsum(ys, axis=0)
        s2 = np.cumsum(ys * ys, axis=0)
        k = np.arange(1, n, dtype=float)[:, None]
        left = s2[:-1] - s1[:-1] ** 2 / k
        right = (s2[-1] - s2[:-1]) - (s1[-1] - s1[:-1]) ** 2 / (n - k)
        scores = left + right
        parent_sse = float((centered * centered).sum())

    scores = np.where(distinct, scores, np.inf)
    by_axis = scores.T  # (D, n-1): row-major order is (axis, threshold)
    best = by_axis.min()
    tolerance = settings.SSE_TIE_TOLERANCE * parent_sse
    flat = int(np.flatnonzero((by_axis <= best + tolerance).ravel())[0])
    axis, k = divmod(flat, n - 1)

    cut = AxialCut(axis, _midpoint(float(xs[k, axis]), float(xs[k + 1, axis])))
    return SplitDecision(cut, split_score(container, cut), SplitRule.MINSSE)


def kd_split(container: Container) -> SplitDecision:
    """
    Cut the highest-variance axis of X at the coordinate median.

    Axes are tried in order of decreasing population variance (ties to the
    lower axis); an axis is skipped when its coordinates are all equal or
    its median lands on the container boundary.

    Raises:
        DegenerateContainerError: no axis admits a cut
    """
    X = container.X
    if X.shape[0] < 2:
        raise DegenerateContainerError(f"container {container.id} has {X.shape[0]} sample(s)")

    bounds = container.bounds
    variances = X.var(axis=0)
    for axis in np.argsort(-variances, kind="stable"):
        coords = X[:, axis]
        if coords.max() == coords.min():
            continue
        threshold = float(np.median(coords))
        if bounds.lower[axis] < threshold < bounds.upper[axis]:
            cut = AxialCut(int(axis), threshold)
            return SplitDecision(cut, split_score(container, cut), SplitRule.KD)
    raise DegenerateContainerError(f"no KD-splittable axis in container {container.id}")


def random_axial(container: Container, rng: np.random.Generator) -> SplitDecision:
    """Uniform random axis, threshold uniform on the open interval of that axis."""
    bounds = container.bounds
    axis = int(rng.integers(bounds.dim))
    low, high = float(bounds.lower[axis]), float(bounds.upper[axis])
    threshold = low
    while not low < threshold < high:
        threshold = float(rng.uniform(low, high))
    cut = AxialCut(axis, threshold)
    return SplitDecision(cut, split_score(container, cut), SplitRule.RANDOM)


def choose_split(
    container: Container, rule: SplitRule, rng: Optional[np.random.Generator] = None
) -> SplitDecision:
    """Apply a split rule by name."""
    rule = SplitRule(rule)
    if rule is SplitRule.MINSSE:
        return min_sse_axial(container)
    if rule is SplitRule.KD:
        return kd_split(container)
    if rng is None:
        raise ValueError("the random split rule needs a generator")
    return random_axial(container, rng)
