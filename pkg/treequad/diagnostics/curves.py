"""
Container-removal and cumulative-contribution curves.

Removing leaves from the estimate and dividing by the posterior mass they
held re-estimates the integral from the remaining region alone:

    z(i) = sum of retained contributions / fraction of posterior samples retained

A reliable tree keeps z(i) roughly flat as the largest leaves go.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Tuple, Union

import numpy as np

from ..core import IntegralResult
from ..errors import InvalidInputError
from ..sampling import SampleBatch
from .membership import locate_result_leaves

logger = logging.getLogger(__name__)


class RemovalOrder(str, Enum):
    """Which leaves count as the largest."""

    VOLUME = "volume"
    CONTRIBUTION = "contribution"


@dataclass(frozen=True)
class RemovalPoint:
    removed: int
    estimate: float
    retained_fraction: float


@dataclass(frozen=True)
class RemovalCurve:
    points: List[RemovalPoint]
    order: RemovalOrder

    def rows(self) -> List[Tuple[int, float, float]]:
        return [(p.removed, p.estimate, p.retained_fraction) for p in self.points]


@dataclass(frozen=True)
class CumulativePoint:
    included: int
    cumulative: float


@dataclass(frozen=True)
class CumulativeCurve:
    points: List[CumulativePoint]
    order: RemovalOrder

    def rows(self) -> List[Tuple[int, float]]:
        return [(p.included, p.cumulative) for p in self.points]


def _require_leaves(result: IntegralResult) -> None:
    if result.n_leaves == 0:
        raise InvalidInputError(f"{result.method} result carries no leaf contributions")


def leaf_order(
    result: IntegralResult, order: Union[RemovalOrder, str] = RemovalOrder.VOLUME
) -> np.ndarray:
    """Leaf positions from largest to smallest; equal keys keep leaf-id order."""
    order = RemovalOrder(order)
    key = result.volumes() if order is RemovalOrder.VOLUME else np.abs(result.contributions)
    return np.argsort(-key, kind="stable")


def _leaf_counts(result: IntegralResult, locations: np.ndarray) -> Tuple[np.ndarray, int]:
    """Posterior samples per leaf position, plus the total sample count."""
    located = locate_result_leaves(result, locations)
    inside = located >= 0
    positions = np.searchsorted(result.leaf_ids, located[inside])
    return np.bincount(positions, minlength=result.n_leaves), int(located.shape[0])


def _locations(posterior: Union[SampleBatch, np.ndarray]) -> np.ndarray:
    if isinstance(posterior, SampleBatch):
        return posterior.locations
    return np.atleast_2d(np.asarray(posterior, dtype=float))


def posterior_fraction(
    result: IntegralResult,
    locations: Union[SampleBatch, np.ndarray],
    leaf_ids: Iterable[int],
) -> float:
    """
    Fraction of posterior samples inside a set of leaves.

    An estimate of the posterior mass of that region: 1 for the full leaf
    set when every sample is in the domain, 0 for the empty set.
    """
    _require_leaves(result)
    points = _locations(locations)
    if points.shape[0] == 0:
        raise InvalidInputError("no posterior samples to count")
    located = locate_result_leaves(result, points)
    chosen = np.fromiter(leaf_ids, dtype=np.int64)
    return float(np.isin(located, chosen).sum()) / points.shape[0]


def removal_curve(
    result: IntegralResult,
    posterior: Union[SampleBatch, np.ndarray],
    order: Union[RemovalOrder, str] = RemovalOrder.VOLUME,
) -> RemovalCurve:
    """
    Re-estimate the integral after removing the i largest leaves, i = 0 .. L-1.

    Args:
        result: Tree integration result with per-leaf contributions
        posterior: Samples drawn approximately from h / Z
        order: Largest by volume (default) or by absolute contribution

    Returns:
        RemovalCurve; recording stops once no posterior sample remains

    Raises:
        InvalidInputError: no leaves, or no posterior sample inside the domain
    """
    _require_leaves(result)
    order = RemovalOrder(order)
    counts, total = _leaf_counts(result, _locations(posterior))
    if total == 0 or counts.sum() == 0:
        raise InvalidInputError("no posterior samples inside the tree domain")

    ranked = leaf_order(result, order)
    removed_mass = np.concatenate(([0.0], np.cumsum(result.contributions[ranked])))
    retained = int(counts.sum()) - np.concatenate(([0], np.cumsum(counts[ranked])))

    points = []
    for i in range(result.n_leaves):
        if retained[i] == 0:
            logger.debug("removal curve stops at %d: no posterior samples left", i)
            break
        numerator = result.value - removed_mass[i] if i else result.value
        fraction = retained[i] / total
        points.append(RemovalPoint(i, numerator / fraction, fraction))
    return RemovalCurve(points, order)


def cumulative_curve(
    result: IntegralResult, order: Union[RemovalOrder, str] = RemovalOrder.VOLUME
) -> CumulativeCurve:
    """Running sum of contributions, largest leaves first; ends at the full estimate."""
    _require_leaves(result)
    order = RemovalOrder(order)
    running = np.cumsum(result.contributions[leaf_order(result, order)])
    return CumulativeCurve(
        [CumulativePoint(k + 1, float(v)) for k, v in enumerate(running)], order
    )
