"""
Stopping conditions for tree growth.
"""

from __future__ import annotations

from enum import Enum
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..config import settings
from .container import Container


class StopKind(str, Enum):
    MAX_SAMPLES = "max_samples"
    Y_VARIANCE = "y_variance"
    DEPTH_CAP = "depth_cap"


class StoppingCondition(BaseModel):
    """
    One condition a container may satisfy to become a leaf.

    ``max_samples``: at most ``threshold`` samples. ``y_variance``: population
    variance of Y below ``threshold`` (containers with <= 1 sample always
    qualify). ``depth_cap``: depth at least ``threshold``.
    """

    model_config = ConfigDict(frozen=True)

    kind: StopKind
    threshold: float = Field(gt=0)

    def is_satisfied(self, container: Container) -> bool:
        if self.kind is StopKind.MAX_SAMPLES:
            return container.n_samples <= self.threshold
        if self.kind is StopKind.Y_VARIANCE:
            return container.n_samples <= 1 or float(np.var(container.Y)) < self.threshold
        return container.depth >= self.threshold


class StoppingRule(BaseModel):
    """A container stops splitting as soon as any of its conditions holds."""

    model_config = ConfigDict(frozen=True)

    conditions: List[StoppingCondition] = Field(min_length=1)

    def is_satisfied(self, container: Container) -> bool:
        return any(condition.is_satisfied(container) for condition in self.conditions)

    def max_samples(self) -> int:
        """Loosest sample cap among the conditions (1 when none is set)."""
        caps = [c.threshold for c in self.conditions if c.kind is StopKind.MAX_SAMPLES]
        return int(max(caps)) if caps else 1

    def describe(self) -> str:
        return " | ".join(f"{c.kind.value}({c.threshold:g})" for c in self.conditions)


def max_samples(k: int) -> StoppingRule:
    return StoppingRule(conditions=[StoppingCondition(kind=StopKind.MAX_SAMPLES, threshold=k)])


def y_variance(threshold: float) -> StoppingRule:
    return StoppingRule(
        conditions=[StoppingCondition(kind=StopKind.Y_VARIANCE, threshold=threshold)]
    )


def depth_cap(depth: int) -> StoppingRule:
    return StoppingRule(conditions=[StoppingCondition(kind=StopKind.DEPTH_CAP, threshold=depth)])


def combine(*rules: StoppingRule) -> StoppingRule:
    return StoppingRule(conditions=[c for rule in rules for c in rule.conditions])


def default_stopping(dim: int, y0: np.ndarray) -> StoppingRule:
    """
    Single-sample leaves up to MAX_SAMPLES_ONLY_MAX_DIM dimensions; above that a
    variance floor of VARIANCE_STOP_FACTOR * range(Y0)^2 is added so flat
    regions are not split down to single samples.
    """
    rule = max_samples(1)
    values = np.asarray(y0, dtype=float)
    if dim <= settings.MAX_SAMPLES_ONLY_MAX_DIM or values.size == 0:
        return rule
    spread = float(values.max() - values.min())
    if spread <= 0:
        return rule
    return combine(rule, y_variance(settings.VARIANCE_STOP_FACTOR * spread**2))
