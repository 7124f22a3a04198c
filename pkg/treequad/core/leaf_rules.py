"""
Per-container integration rules.

Every rule returns ``volume * representative value``; they differ in where
the representative value comes from and how many new integrand
evaluations that costs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..config import settings
from ..errors import EmptyContainerError, InvalidSampleCountError
from ..problems import Problem
from .container import Container


class LeafRule(str, Enum):
    """Container integral rules (CLI ``--leaf-integral``)."""

    RANDOM = "random"
    MIDPOINT = "midpoint"
    MEAN = "mean"
    MEDIAN = "median"


@dataclass(frozen=True)
class ContainerIntegral:
    value: float
    extra_evals: int
    rule: LeafRule
    fallback: bool = False


def integrate_random(
    container: Container,
    problem: Problem,
    m: int = settings.DEFAULT_LEAF_EVALS,
    rng: Optional[np.random.Generator] = None,
) -> ContainerIntegral:
    """Volume times the mean of m fresh uniform evaluations inside the container."""
    if m < 1:
        raise InvalidSampleCountError(f"random container integral needs m >= 1, got {m}")
    rng = rng if rng is not None else np.random.default_rng()
    bounds = container.bounds
    points = rng.uniform(bounds.lower, bounds.upper, size=(m, bounds.dim))
    values = np.asarray(problem.integrand(points))
    return ContainerIntegral(container.volume() * float(values.mean()), m, LeafRule.RANDOM)


def integrate_midpoint(container: Container, problem: Problem) -> ContainerIntegral:
    value = float(problem.integrand(container.bounds.center))
    return ContainerIntegral(container.volume() * value, 1, LeafRule.MIDPOINT)


def integrate_mean_y(container: Container) -> ContainerIntegral:
    if container.n_samples == 0:
        raise EmptyContainerError(f"container {container.id} has no samples to average")
    return ContainerIntegral(container.volume() * float(container.Y.mean()), 0, LeafRule.MEAN)


def integrate_median_y(container: Container) -> ContainerIntegral:
    # np.median averages the two middle values for even counts
    if container.n_samples == 0:
        raise EmptyContainerError(f"container {container.id} has no samples to take a median of")
    return ContainerIntegral(
        container.volume() * float(np.median(container.Y)), 0, LeafRule.MEDIAN
    )


def integrate_container(
    container: Container,
    problem: Problem,
    rule: LeafRule,
    m: int = settings.DEFAULT_LEAF_EVALS,
    rng: Optional[np.random.Generator] = None,
) -> ContainerIntegral:
    """
    Dispatch to a rule; sample-based rules on empty containers fall back to the midpoint rule.
    """
    rule = LeafRule(rule)
    if rule is LeafRule.RANDOM:
        return integrate_random(container, problem, m, rng)
    if rule is LeafRule.MIDPOINT:
        return integrate_midpoint(container, problem)
    if container.n_samples == 0:
        mid = integrate_midpoint(container, problem)
        return ContainerIntegral(mid.value, mid.extra_evals, rule, fallback=True)
    if rule is LeafRule.MEAN:
        return integrate_mean_y(container)
    return integrate_median_y(container)
