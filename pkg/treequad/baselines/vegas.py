"""
Classic separable Vegas (importance sampling only, no stratification).

Each axis carries M bins of adjustable width. A point is drawn by picking
one bin per axis uniformly and a uniform position inside it, so the sampling
density is ``1 / J`` with ``J = prod_d M * width_d``. After every iteration
each axis's bins are resized so that bins with more squared weighted
integrand get narrower.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..config import settings
from ..core.result import IntegralResult
from ..errors import InvalidSampleCountError
from ..problems import Domain, Problem

logger = logging.getLogger(__name__)


@dataclass
class VegasGrid:
    """
    Per-axis bin edges, a (D, M + 1) array.

    Edges on every axis are strictly increasing and start and end on the
    domain bounds.
    """

    edges: np.ndarray
    alpha: float = settings.VEGAS_ALPHA

    @classmethod
    def uniform(cls, domain: Domain, bins: int, alpha: float = settings.VEGAS_ALPHA) -> VegasGrid:
        if bins < 2:
            raise InvalidSampleCountError(f"Vegas needs at least 2 bins per axis, got {bins}")
        edges = np.stack(
            [np.linspace(lo, hi, bins + 1) for lo, hi in zip(domain.lower, domain.upper)]
        )
        return cls(edges, alpha)

    @property
    def dim(self) -> int:
        return int(self.edges.shape[0])

    @property
    def bins(self) -> int:
        return int(self.edges.shape[1] - 1)

    def is_valid(self, domain: Domain) -> bool:
        return bool(
            np.all(np.diff(self.edges, axis=1) > 0)
            and np.array_equal(self.edges[:, 0], domain.lower)
            and np.array_equal(self.edges[:, -1], domain.upper)
        )

    def sample(
        self, rng: np.random.Generator, n: int
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Draw n points from the grid density.

        Returns:
            (points, jacobians, bin indices) with shapes (n, D), (n,), (n, D)
        """
        index = rng.integers(self.bins, size=(n, self.dim))
        offset = rng.random((n, self.dim))
        axes = np.arange(self.dim)
        low = self.edges[axes, index]
        width = self.edges[axes, index + 1] - low
        points = low + offset * width
        jacobian = np.prod(self.bins * width, axis=1)
        return points, jacobian, index

    def refine(self, index: np.ndarray, squared: np.ndarray) -> None:
        """
        Resize bins from one iteration's squared weighted values.

        Per axis the mean of ``(h J)^2`` in each bin is smoothed with its
        neighbours, normalized, and compressed with
        ``((d - 1) / ln d) ** alpha``; the new edges split the cumulative
        compressed weight evenly. Axes that saw no signal keep their edges.
        """
        bins = self.bins
        for axis in range(self.dim):
            totals = np.bincount(index[:, axis], weights=squared, minlength=bins)
            counts = np.bincount(index[:, axis], minlength=bins)
            density = totals / np.maximum(counts, 1)
            if not density.any():
                continue

            smoothed = np.empty(bins)
            smoothed[0] = (density[0] + density[1]) / 2.0
            smoothed[-1] = (density[-2] + density[-1]) / 2.0
            smoothed[1:-1] = (density[:-2] + density[1:-1] + density[2:]) / 3.0
            smoothed /= smoothed.sum()

            with np.errstate(divide="ignore", invalid="ignore"):
                damped = ((smoothed - 1.0) / np.log(smoothed)) ** self.alpha
            damped = np.where(smoothed >= 1.0, 1.0, damped)
            damped = np.where(smoothed <= 0.0, 0.0, damped)
            damped = np.maximum(damped, 1e-10 * damped.max())

            cumulative = np.concatenate(([0.0], np.cumsum(damped)))
            targets = np.linspace(0.0, cumulative[-1], bins + 1)
            edges = np.interp(targets, cumulative, self.edges[axis])
            edges[0], edges[-1] = self.edges[axis, 0], self.edges[axis, -1]
            self.edges[axis] = edges


@dataclass
class VegasIteration:
    estimate: float
    variance: float
    evaluations: int
    edges: np.ndarray = field(repr=False)

    @property
    def std_error(self) -> float:
        return float(np.sqrt(self.variance))


def _iteration_sizes(n_total: int, iterations: int) -> List[int]:
    base, extra = divmod(n_total, iterations)
    return [base + (1 if i < extra else 0) for i in range(iterations)]


def vegas(
    problem: Problem,
    n_total: int,
    iterations: int = settings.VEGAS_ITERATIONS,
    bins: int = settings.VEGAS_BINS,
    alpha: float = settings.VEGAS_ALPHA,
    seed: int = 0,
) -> IntegralResult:
    """
    Adaptive-grid Vegas estimate of the problem integral.

    Iteration estimates are combined by inverse variance. An iteration whose
    values are all zero has infinite variance: it is left out of the
    combination and does not move the grid.

    Args:
        problem: Problem to integrate
        n_total: Integrand evaluations across all iterations
        iterations: Number of grid refinement rounds
        bins: Bins per axis
        alpha: Compression exponent for the bin weights
        seed: Generator seed

    Returns:
        IntegralResult; ``details`` holds the per-iteration report, the
        combined standard error, chi^2 per degree of freedom and the final grid
    """
    if iterations < 1:
        raise InvalidSampleCountError(f"Vegas needs at least 1 iteration, got {iterations}")
    if n_total < iterations:
        raise InvalidSampleCountError(
            f"{n_total} evaluations cannot cover {iterations} iterations"
        )
    rng = np.random.default_rng(seed)
    grid = VegasGrid.uniform(problem.domain, bins, alpha)
    before = problem.evaluations
    report: List[VegasIteration] = []

    for size in _iteration_sizes(n_total, iterations):
        points, jacobian, index = grid.sample(rng, size)
        weighted = np.asarray(problem.integrand(points), dtype=float) * jacobian
        estimate = float(weighted.mean())
        if not weighted.any():
            logger.info("Vegas iteration on %s saw only zeros", problem.name)
            report.append(VegasIteration(0.0, float("inf"), size, grid.edges.copy()))
            continue
        variance = float(weighted.var(ddof=1) / size) if size > 1 else float("inf")
        variance = max(variance, settings.VARIANCE_FLOOR)
        report.append(VegasIteration(estimate, variance, size, grid.edges.copy()))
        grid.refine(index, weighted * weighted)

    usable = [it for it in report if np.isfinite(it.variance)]
    if usable:
        inverse = np.array([1.0 / it.variance for it in usable])
        estimates = np.array([it.estimate for it in usable])
        value = float(np.sum(inverse * estimates) / np.sum(inverse))
        std_error = float(1.0 / np.sqrt(np.sum(inverse)))
        chi2_dof = (
            float(np.sum(inverse * (estimates - value) ** 2) / (len(usable) - 1))
            if len(usable) > 1
            else 0.0
        )
    else:
        value, std_error, chi2_dof = 0.0, float("inf"), 0.0

    return IntegralResult(
        value=value,
        method="vegas",
        seed=seed,
        evals_sampling=problem.evaluations - before,
        details={
            "iterations": report,
            "std_error": std_error,
            "chi2_dof": chi2_dof,
            "grid": grid,
        },
    )
