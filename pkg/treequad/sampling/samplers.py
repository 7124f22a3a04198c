"""
Initial-sample generators.

A sampler is any callable ``(problem, n, seed) -> SampleBatch``; tree
quadrature never looks at how the locations were produced, so third-party
samplers plug in through the same contract.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict

import numpy as np

from ..config import settings
from ..errors import (
    EmptyBatchError,
    InvalidSampleCountError,
    SamplerFailureError,
    UnsupportedProblemError,
)
from ..problems import Problem
from .batch import SampleBatch, SamplerConfig, SamplerKind

logger = logging.getLogger(__name__)

Sampler = Callable[[Problem, int, int], SampleBatch]

_MIN_PROPOSAL_BLOCK = 1024


def _check_count(n: int) -> None:
    if n < 1:
        raise InvalidSampleCountError(f"sample count must be >= 1, got {n}")


def _evaluated(problem: Problem, locations: np.ndarray, **extra: object) -> SampleBatch:
    before = problem.evaluations
    values = np.asarray(problem.integrand(locations))
    return SampleBatch(
        locations=locations,
        values=values,
        evaluations=problem.evaluations - before,
        **extra,  # type: ignore[arg-type]
    )


def sample_uniform(problem: Problem, n: int, seed: int) -> SampleBatch:
    """
    i.i.d. uniform draws over the problem domain.

    Args:
        problem: Problem whose integrand fills the batch values
        n: Number of samples
        seed: Generator seed; equal seeds give identical batches

    Returns:
        Evaluated batch of n samples
    """
    _check_count(n)
    rng = np.random.default_rng(seed)
    return _evaluated(problem, problem.sample_prior(rng, n))


def sample_mixture_direct(problem: Problem, n: int, seed: int) -> SampleBatch:
    """
    Exact draws from the problem's Gaussian mixture truncated to the domain.

    Each draw picks a mode uniformly, adds isotropic noise and is rejected
    when it falls outside the domain. Under a uniform prior these are
    posterior draws (posterior proportional to f * p).

    Raises:
        UnsupportedProblemError: the problem carries no mixture
        SamplerFailureError: more than MAX_CONSECUTIVE_REJECTIONS rejections in a row
    """
    _check_count(n)
    spec = problem.mixture
    if spec is None:
        raise UnsupportedProblemError(f"problem {problem.name!r} has no mixture to sample")

    rng = np.random.default_rng(seed)
    domain = problem.domain
    accepted = []
    have = 0
    rejected = 0
    run = 0  # current streak of consecutive rejections
    cap = settings.MAX_CONSECUTIVE_REJECTIONS

    while have < n:
        block = max(n - have, _MIN_PROPOSAL_BLOCK)
        modes = rng.integers(spec.n_modes, size=block)
        draws = spec.means[modes] + spec.sigma * rng.standard_normal((block, spec.dim))
        inside = domain.contains(draws)
        hits = np.flatnonzero(inside)

        if hits.size == 0:
            run += block
            rejected += block
            if run > cap:
                raise SamplerFailureError(
                    f"{run} consecutive rejections while sampling {problem.name!r}"
                )
            continue

        take = hits[: n - have]
        gaps = np.diff(np.concatenate(([-1], take))) - 1
        gaps[0] += run
        if gaps.max() > cap:
            raise SamplerFailureError(
                f"{int(gaps.max())} consecutive rejections while sampling {problem.name!r}"
            )
        rejected += int(take[-1] + 1 - take.size)
        run = 0
        accepted.append(draws[take])
        have += take.size

    locations = np.concatenate(accepted, axis=0)
    batch = _evaluated(problem, locations, rejected=rejected)
    if rejected:
        logger.debug("mixture sampler rejected %d of %d proposals", rejected, rejected + n)
    return batch


def sample_metropolis(
    problem: Problem,
    n: int,
    seed: int,
    step: float = settings.METROPOLIS_STEP,
    burn_in: int = settings.METROPOLIS_BURN_IN,
) -> SampleBatch:
    """
    Random-walk Metropolis chain targeting the integrand restricted to the domain.

    The chain starts at the domain center and runs ``n`` states; the first
    ``burn_in`` are discarded, so the batch holds ``n - burn_in`` rows.
    Proposals outside the domain are rejected without evaluating the integrand.

    Args:
        problem: Target problem
        n: Chain length including burn-in
        seed: Generator seed
        step: Standard deviation of the isotropic Gaussian proposal
        burn_in: Leading states to discard

    Raises:
        EmptyBatchError: burn_in >= n
    """
    _check_count(n)
    if step <= 0:
        raise ValueError(f"Metropolis step must be positive, got {step}")
    if burn_in >= n:
        raise EmptyBatchError(f"burn_in={burn_in} leaves no samples from a chain of {n}")

    rng = np.random.default_rng(seed)
    domain = problem.domain
    dim = problem.dim
    before = problem.evaluations

    current = domain.center.copy()
    current_h = float(problem.integrand(current))
    kept = n - burn_in
    locations = np.empty((kept, dim))
    values = np.empty(kept)
    accepted_after_burn_in = 0

    noise = rng.standard_normal((n, dim)) * step
    uniforms = rng.random(n)
    for i in range(n):
        proposal = current + noise[i]
        accept = False
        if domain.contains(proposal):
            proposal_h = float(problem.integrand(proposal))
            accept = proposal_h >= current_h or uniforms[i] * current_h < proposal_h
        if accept:
            current = proposal
            current_h = proposal_h
        if i >= burn_in:
            locations[i - burn_in] = current
            values[i - burn_in] = current_h
            accepted_after_burn_in += int(accept)

    rate = accepted_after_burn_in / kept
    batch = SampleBatch(
        locations=locations,
        values=values,
        evaluations=problem.evaluations - before,
        acceptance_rate=rate,
    )
    if accepted_after_burn_in == 0:
        message = f"Metropolis chain on {problem.name!r} accepted no proposals after burn-in"
        batch.warnings.append(message)
        logger.warning(message)
    return batch


SAMPLERS: Dict[SamplerKind, Sampler] = {
    SamplerKind.UNIFORM: sample_uniform,
    SamplerKind.MIXTURE: sample_mixture_direct,
}


def draw_samples(problem: Problem, config: SamplerConfig) -> SampleBatch:
    """Run the sampler a SamplerConfig describes."""
    if config.kind is SamplerKind.METROPOLIS:
        return sample_metropolis(
            problem, config.n, config.seed, step=config.step, burn_in=config.burn_in
        )
    return SAMPLERS[config.kind](problem, config.n, config.seed)
