"""
Approximate posterior draws from a fitted tree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..core import IntegralResult
from ..errors import InvalidInputError, InvalidSampleCountError, NoMassError

logger = logging.getLogger(__name__)


@dataclass
class SurrogateSample:
    """``locations[k]`` lies inside the bounds of leaf ``leaf_ids[k]``."""

    locations: np.ndarray
    leaf_ids: np.ndarray
    warnings: List[str] = field(default_factory=list)


def surrogate_sample(result: IntegralResult, n: int, rng: np.random.Generator) -> SurrogateSample:
    """
    Pick leaves in proportion to their positive contribution, then sample uniformly inside.

    Leaves with a contribution <= 0 are never picked; negative contributions
    attach a warning to the sample.

    Raises:
        NoMassError: no leaf has a positive contribution
    """
    if result.n_leaves == 0:
        raise InvalidInputError(f"{result.method} result carries no leaf contributions")
    if n < 0:
        raise InvalidSampleCountError(f"cannot draw {n} surrogate samples")

    warnings = []
    negative = int((result.contributions < 0).sum())
    if negative:
        message = f"{negative} leaves with negative contributions excluded from surrogate sampling"
        logger.warning(message)
        warnings.append(message)

    mass = np.maximum(result.contributions, 0.0)
    total = float(mass.sum())
    if total <= 0.0:
        raise NoMassError("no leaf has a positive integral contribution")

    chosen = rng.choice(result.n_leaves, size=n, p=mass / total)
    locations = rng.uniform(result.lower[chosen], result.upper[chosen])
    return SurrogateSample(
        locations=locations.reshape(n, result.lower.shape[1]),
        leaf_ids=result.leaf_ids[chosen],
        warnings=warnings,
    )
