"""
Pytest configuration and fixtures for tree quadrature testing.
"""

import logging

import numpy as np
import pytest

from treequad.core import Container
from treequad.problems import Domain, Problem, get_problem, make_constant
from treequad.sampling import SampleBatch, sample_mixture_direct, sample_uniform


@pytest.fixture(autouse=True)
def package_logging():
    """Let caplog see package records regardless of earlier CLI runs."""
    logger = logging.getLogger("treequad")
    previous = logger.level
    logger.setLevel(logging.DEBUG)
    yield logger
    logger.setLevel(previous)


@pytest.fixture
def rng():
    """Deterministic generator for tests that need one."""
    return np.random.default_rng(12345)


@pytest.fixture
def camel_1d() -> Problem:
    return get_problem("camel", 1)


@pytest.fixture
def camel_2d() -> Problem:
    return get_problem("camel", 2)


@pytest.fixture
def gaussian_1d() -> Problem:
    return get_problem("gaussian", 1)


@pytest.fixture
def constant_3d() -> Problem:
    """Flat integrand h == 2.5 on the unit cube."""
    return make_constant(3, value=2.5)


@pytest.fixture
def linear_1d() -> Problem:
    """h(x) = x on [0, 1] with a uniform prior (Z = 0.5)."""
    domain = Domain([0.0], [1.0])
    return Problem(
        name="linear",
        domain=domain,
        component_integrand=lambda x: np.atleast_2d(x)[:, 0],
        true_value=0.5,
        product=lambda x: np.atleast_2d(x)[:, 0],
    )


@pytest.fixture
def camel_2d_batch(camel_2d) -> SampleBatch:
    """500 exact posterior draws on the 2-D camel."""
    return sample_mixture_direct(camel_2d, 500, seed=7)


@pytest.fixture
def uniform_batch_factory():
    """Build uniform batches for arbitrary problems and sizes."""

    def factory(problem: Problem, n: int, seed: int = 0) -> SampleBatch:
        return sample_uniform(problem, n, seed)

    return factory


@pytest.fixture
def unit_square_container(rng) -> Container:
    """A 2-D container holding 20 uniform samples of y = x0 + 3 x1."""
    X = rng.uniform(0.0, 1.0, size=(20, 2))
    return Container(Domain.cube(0.0, 1.0, 2), X, X[:, 0] + 3.0 * X[:, 1])


@pytest.fixture
def output_dir(tmp_path):
    """Fresh output directory for CLI and I/O tests."""
    path = tmp_path / "out"
    path.mkdir()
    return path
