"""
Simple Monte Carlo and importance sampling.

Both estimators average ``w = h(x) / g(x)`` over draws from a proposal ``g``;
simple Monte Carlo is the special case ``g = p``, where the weights reduce
to ``f(x)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core.result import IntegralResult
from ..errors import InvalidProposalError, InvalidSampleCountError, UnsupportedProblemError
from ..problems import Problem

logger = logging.getLogger(__name__)

ProposalSampler = Callable[[np.random.Generator, int], np.ndarray]
ProposalDensity = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Proposal:
    """An importance proposal: a sampler and the density it draws from."""

    name: str
    sample: ProposalSampler
    density: ProposalDensity


def prior_proposal(problem: Problem) -> Proposal:
    """The problem's own prior as a proposal."""
    return Proposal("prior", problem.sample_prior, problem.prior_density)


def mixture_proposal(problem: Problem) -> Proposal:
    """
    The problem's Gaussian mixture, normalized and not truncated to the domain.

    Draws outside the domain have ``h = 0`` and so carry zero weight.

    Raises:
        UnsupportedProblemError: the problem carries no mixture
    """
    spec = problem.mixture
    if spec is None:
        raise UnsupportedProblemError(f"problem {problem.name!r} has no mixture proposal")

    def sample(rng: np.random.Generator, n: int) -> np.ndarray:
        modes = rng.integers(spec.n_modes, size=n)
        return spec.means[modes] + spec.sigma * rng.standard_normal((n, spec.dim))

    def density(x: np.ndarray) -> np.ndarray:
        return spec.density(x) / spec.n_modes

    return Proposal("mixture", sample, density)


def effective_sample_size(weights: np.ndarray) -> float:
    """(sum w)^2 / sum w^2; 0 when every weight is 0."""
    squares = float(np.sum(weights * weights))
    if squares == 0.0:
        return 0.0
    return float(np.sum(weights)) ** 2 / squares


def importance_sampling(
    problem: Problem,
    g_sampler: ProposalSampler,
    g_density: ProposalDensity,
    n: int,
    seed: int,
    method: str = "is",
) -> IntegralResult:
    """
    Importance-sampling estimate of the problem integral.

    Args:
        problem: Problem to integrate
        g_sampler: Draws n proposal points given a generator
        g_density: Proposal density, vectorized
        n: Number of draws (and integrand evaluations)
        seed: Generator seed
        method: Tag recorded on the result

    Returns:
        IntegralResult with the weights, their ESS and a standard error in ``details``

    Raises:
        InvalidProposalError: a draw has g == 0 where h != 0
    """
    if n < 1:
        raise InvalidSampleCountError(f"importance sampling needs n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    x = np.atleast_2d(g_sampler(rng, n))
    before = problem.evaluations
    h = np.asarray(problem.integrand(x), dtype=float)
    g = np.asarray(g_density(x), dtype=float)

    uncovered = (g <= 0) & (h != 0)
    if uncovered.any():
        raise InvalidProposalError(
            f"proposal density is 0 at {int(uncovered.sum())} draws where the integrand is not"
        )
    weights = np.divide(h, g, out=np.zeros_like(h), where=g > 0)
    value = float(weights.mean())
    std_error = float(weights.std(ddof=1) / np.sqrt(n)) if n > 1 else float("inf")
    ess = effective_sample_size(weights)
    logger.debug("%s on %s: estimate %.6g, ESS %.1f of %d", method, problem.name, value, ess, n)

    return IntegralResult(
        value=value,
        method=method,
        seed=seed,
        evals_sampling=problem.evaluations - before,
        details={"weights": weights, "ess": ess, "std_error": std_error},
    )


def importance_with(problem: Problem, proposal: Proposal, n: int, seed: int) -> IntegralResult:
    """importance_sampling with a packaged Proposal."""
    return importance_sampling(problem, proposal.sample, proposal.density, n, seed)


def smc(problem: Problem, n: int, seed: int) -> IntegralResult:
    """
    Simple Monte Carlo: the mean of f over n i.i.d. prior draws.

    Runs the importance estimator with the prior as proposal, so it draws
    and evaluates exactly as ``importance_sampling`` with ``g = p`` does.
    """
    proposal = prior_proposal(problem)
    return importance_sampling(problem, proposal.sample, proposal.density, n, seed, method="smc")
