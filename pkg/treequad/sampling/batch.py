"""
Sample batches and sampler configuration.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..config import settings


class SamplerKind(str, Enum):
    """Initial-sample generators selectable from the CLI."""

    UNIFORM = "uniform"
    MIXTURE = "mixture"
    METROPOLIS = "metropolis"


class SamplerConfig(BaseModel):
    """Which sampler to run and with what parameters."""

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    kind: SamplerKind = SamplerKind.MIXTURE
    n: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    step: float = Field(default=settings.METROPOLIS_STEP, gt=0)
    burn_in: int = Field(default=settings.METROPOLIS_BURN_IN, ge=0)


@dataclass
class SampleBatch:
    """
    Sample locations with their integrand values.

    ``values[i]`` is the integrand evaluated at ``locations[i]``; samplers
    fill it from the same call so no point is evaluated twice.
    """

    locations: np.ndarray
    values: np.ndarray
    evaluations: int = 0
    acceptance_rate: Optional[float] = None
    rejected: int = 0
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.locations = np.atleast_2d(np.asarray(self.locations, dtype=float))
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        if self.locations.shape[0] != self.values.shape[0]:
            raise ValueError(
                f"{self.locations.shape[0]} locations but {self.values.shape[0]} values"
            )

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def dim(self) -> int:
        return int(self.locations.shape[1])
