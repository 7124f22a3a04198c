"""
Benchmark problems with analytic ground truth: Gaussian, Camel and Quad.

All three share the isotropic covariance ``(1/200) I`` and a uniform prior
over their hyper-cube, so their true values come from the separable CDF
oracle for any dimension.
"""

from __future__ import annotations

from typing import Callable, Dict, Optional

import numpy as np

from ..config import settings
from ..errors import InvalidDimensionError, UnknownProblemError
from .domain import Domain
from .oracle import true_value_oracle
from .problem import GaussianMixtureSpec, Problem


def _check_dim(dim: int) -> None:
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")


def make_mixture_problem(name: str, domain: Domain, means: np.ndarray) -> Problem:
    """Build a uniform-prior problem whose f is an isotropic Gaussian mixture."""
    spec = GaussianMixtureSpec(means=means, variance=settings.COVARIANCE_SCALE)
    return Problem(
        name=name,
        domain=domain,
        component_integrand=spec.density,
        true_value=true_value_oracle(spec, domain),
        mixture=spec,
    )


def make_gaussian(dim: int) -> Problem:
    """Single normal at the origin on ``[-1, 1]^dim``; Z = erf(10)^dim / 2^dim."""
    _check_dim(dim)
    return make_mixture_problem("gaussian", Domain.cube(-1.0, 1.0, dim), np.zeros((1, dim)))


def make_camel(dim: int) -> Problem:
    """Two normals at 1/3 and 2/3 along the unit diagonal of ``[0, 1]^dim``; Z is just under 2."""
    _check_dim(dim)
    means = np.array([np.full(dim, 1.0 / 3.0), np.full(dim, 2.0 / 3.0)])
    return make_mixture_problem("camel", Domain.cube(0.0, 1.0, dim), means)


def make_quad_camel(dim: int) -> Problem:
    """Four normals at 2, 4, 6 and 8 along the diagonal of ``[0, 10]^dim``; Z ~ 4 * 10^-dim."""
    _check_dim(dim)
    means = np.array([np.full(dim, c) for c in (2.0, 4.0, 6.0, 8.0)])
    return make_mixture_problem("quad", Domain.cube(0.0, 10.0, dim), means)


def make_constant(dim: int, value: float = 1.0, domain: Optional[Domain] = None) -> Problem:
    """
    Flat integrand ``h == value`` (f = value * volume under the uniform prior).

    Used to check that every integrator is exact on constants.
    """
    _check_dim(dim)
    dom = domain or Domain.cube(0.0, 1.0, dim)
    f_value = value * dom.volume()

    def flat(x: np.ndarray) -> np.ndarray:
        return np.full(np.atleast_2d(x).shape[0], f_value)

    def prior(x: np.ndarray) -> np.ndarray:
        return np.where(dom.contains(np.atleast_2d(x)), 1.0 / dom.volume(), 0.0)

    def exact_h(x: np.ndarray) -> np.ndarray:
        return np.where(dom.contains(np.atleast_2d(x)), value, 0.0)

    return Problem(
        name="constant",
        domain=dom,
        component_integrand=flat,
        true_value=value * dom.volume(),
        prior_density=prior,
        product=exact_h,
    )


PROBLEMS: Dict[str, Callable[[int], Problem]] = {
    "gaussian": make_gaussian,
    "camel": make_camel,
    "quad": make_quad_camel,
}


def get_problem(problem_id: str, dim: int) -> Problem:
    """Look up a benchmark factory by id and build it for ``dim``."""
    try:
        factory = PROBLEMS[problem_id]
    except KeyError:
        raise UnknownProblemError(
            f"unknown problem {problem_id!r}; choose from {sorted(PROBLEMS)}"
        ) from None
    return factory(dim)
