"""
Integration problem abstraction.

A Problem bundles the integrand ``h(x) = f(x) p(x)`` with its parts, the
domain, an analytic truth and an evaluation ledger shared by every
integrator that touches it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .domain import Domain

VectorFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class GaussianMixtureSpec:
    """
    Equal-weight sum of isotropic normal densities, ``f(x) = sum_k N(x | mu_k, s2 I)``.

    ``covariance`` is only set when a caller wants to describe a full matrix;
    the benchmark factories always leave it ``None`` (isotropic).
    """

    means: np.ndarray
    variance: float
    covariance: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        means = np.atleast_2d(np.asarray(self.means, dtype=float))
        if self.variance <= 0:
            raise ValueError(f"mixture variance must be positive, got {self.variance}")
        object.__setattr__(self, "means", means)

    @property
    def n_modes(self) -> int:
        return int(self.means.shape[0])

    @property
    def dim(self) -> int:
        return int(self.means.shape[1])

    @property
    def sigma(self) -> float:
        return float(np.sqrt(self.variance))

    def is_isotropic(self) -> bool:
        if self.covariance is None:
            return True
        cov = np.asarray(self.covariance, dtype=float)
        return bool(np.array_equal(cov, self.variance * np.eye(self.dim)))

    def density(self, x: np.ndarray) -> np.ndarray:
        """Unnormalized mixture value (plain sum of component densities) at each row of x."""
        pts = np.atleast_2d(x)
        sq = ((pts[:, None, :] - self.means[None, :, :]) ** 2).sum(axis=-1)
        norm = (2.0 * np.pi * self.variance) ** (-0.5 * self.dim)
        return norm * np.exp(-0.5 * sq / self.variance).sum(axis=1)


class Problem:
    """
    Weighted integral ``Z = int_domain f(x) p(x) dx`` with a known answer.

    ``integrand`` is the counted entry point: every row it evaluates bumps the
    shared counter by one. ``component_integrand`` and ``prior_density`` are
    exposed uncounted for diagnostics.
    """

    def __init__(
        self,
        name: str,
        domain: Domain,
        component_integrand: VectorFunction,
        true_value: float,
        prior_density: Optional[VectorFunction] = None,
        mixture: Optional[GaussianMixtureSpec] = None,
        product: Optional[VectorFunction] = None,
    ):
        """
        Initialize a problem.

        Args:
            name: Problem id (e.g. "camel")
            domain: Integration domain
            component_integrand: f, vectorized over rows of an (n, D) array
            true_value: Analytic value of Z
            prior_density: p, vectorized; uniform over the domain when omitted
            mixture: Mixture structure behind f, if any (enables direct sampling)
            product: Closed form of h = f * p when one is cheaper or exact
        """
        self.name = name
        self.domain = domain
        self.true_value = float(true_value)
        self.mixture = mixture
        self._f = component_integrand
        self._p = prior_density
        self._h = product
        self._evaluations = 0
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.domain.dim

    @property
    def evaluations(self) -> int:
        """Number of integrand evaluations so far (one per point)."""
        with self._lock:
            return self._evaluations

    def reset_counter(self) -> None:
        with self._lock:
            self._evaluations = 0

    def prior_density(self, x: np.ndarray) -> Union[float, np.ndarray]:
        pts = np.asarray(x, dtype=float)
        if self._p is not None:
            values = np.asarray(self._p(np.atleast_2d(pts)), dtype=float)
        else:
            inside = self.domain.contains(np.atleast_2d(pts))
            values = np.where(inside, 1.0 / self.domain.volume(), 0.0)
        return float(values[0]) if pts.ndim == 1 else values

    def component_integrand(self, x: np.ndarray) -> Union[float, np.ndarray]:
        pts = np.asarray(x, dtype=float)
        values = np.asarray(self._f(np.atleast_2d(pts)), dtype=float)
        return float(values[0]) if pts.ndim == 1 else values

    def integrand(self, x: np.ndarray) -> Union[float, np.ndarray]:
        """
        Evaluate ``h = f * p`` and charge the evaluation ledger.

        Args:
            x: A D-vector (one evaluation) or an (n, D) array (n evaluations)

        Returns:
            A float for a vector input, an (n,) array otherwise
        """
        pts = np.asarray(x, dtype=float)
        rows = np.atleast_2d(pts)
        if self._h is not None:
            values = np.asarray(self._h(rows), dtype=float)
        else:
            f = np.asarray(self._f(rows), dtype=float)
            values = f * np.asarray(self.prior_density(rows), dtype=float)
        with self._lock:
            self._evaluations += rows.shape[0]
        return float(values[0]) if pts.ndim == 1 else values

    def sample_prior(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n points from the (uniform) prior over the domain."""
        return rng.uniform(self.domain.lower, self.domain.upper, size=(n, self.dim))

    def __repr__(self) -> str:
        return f"Problem(name={self.name!r}, dim={self.dim}, true_value={self.true_value:.6g})"
