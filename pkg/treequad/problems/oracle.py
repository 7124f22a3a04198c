"""
Analytic ground truth for separable Gaussian-mixture problems, plus a
dense trapezium-rule reference for one-dimensional problems.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate, stats

from ..errors import InvalidDimensionError, UnsupportedProblemError
from .domain import Domain
from .problem import GaussianMixtureSpec, Problem


def _interval_mass(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Standard normal mass of [lo, hi], evaluated on the tail that keeps precision."""
    upper_tail = lo > 0
    from_cdf = stats.norm.cdf(hi) - stats.norm.cdf(lo)
    from_sf = stats.norm.sf(lo) - stats.norm.sf(hi)
    return np.where(upper_tail, from_sf, from_cdf)


def mode_masses(spec: GaussianMixtureSpec, domain: Domain) -> np.ndarray:
    """Mass of each mixture component inside the domain, shape (n_modes,)."""
    if not spec.is_isotropic():
        raise UnsupportedProblemError("analytic truth needs an isotropic covariance")
    if spec.dim != domain.dim:
        raise InvalidDimensionError(f"mixture is {spec.dim}-D but domain is {domain.dim}-D")
    sigma = spec.sigma
    lo = (domain.lower[None, :] - spec.means) / sigma
    hi = (domain.upper[None, :] - spec.means) / sigma
    return np.prod(_interval_mass(lo, hi), axis=1)


def true_value_oracle(spec: GaussianMixtureSpec, domain: Domain) -> float:
    """
    Exact ``Z = int f p`` for an isotropic mixture under the uniform prior.

    Every mode factorizes over axes, so its in-domain mass is a product of
    one-dimensional normal CDF differences; the uniform prior then scales
    the sum by ``1 / volume``.

    Args:
        spec: Mixture defining f
        domain: Axis-aligned domain carrying the uniform prior

    Returns:
        The integral value
    """
    return float(mode_masses(spec, domain).sum() / domain.volume())


def trapezoid_reference(problem: Problem, n: int = 1_000_001) -> float:
    """
    Composite trapezium rule on a uniform grid, for 1-D problems only.

    Evaluates the uncounted ``f * p`` so it never disturbs the ledger.
    """
    if problem.dim != 1:
        raise UnsupportedProblemError("trapezoid reference is one-dimensional")
    grid = np.linspace(problem.domain.lower[0], problem.domain.upper[0], n)
    pts = grid[:, None]
    values = np.asarray(problem.component_integrand(pts)) * np.asarray(
        problem.prior_density(pts)
    )
    return float(integrate.trapezoid(values, grid))
