"""
Experiment configuration and run records.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config import settings
from ..core import LeafRule, SplitRule, StoppingRule, combine, max_samples, y_variance
from ..errors import ConfigError
from ..sampling import SamplerKind


class MethodKind(str, Enum):
    """Integrators a grid can run."""

    SMC = "smc"
    IS = "is"
    VEGAS = "vegas"
    TQ_S = "tq-s"
    TQ_A = "tq-a"

    @property
    def is_tree(self) -> bool:
        return self in (MethodKind.TQ_S, MethodKind.TQ_A)


class ProposalKind(str, Enum):
    PRIOR = "prior"
    MIXTURE = "mixture"


class VegasSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    bins: int = Field(default=settings.VEGAS_BINS, ge=2)
    iterations: int = Field(default=settings.VEGAS_ITERATIONS, ge=1)
    alpha: float = Field(default=settings.VEGAS_ALPHA, gt=0)


class ExperimentConfig(BaseModel):
    """
    A grid of runs: every problem x method x dimension x replicate.

    Defaults reproduce the benchmark setting of 12,000 integrand evaluations
    per run with leaf-integration evaluations counted inside the budget.
    """

    model_config = ConfigDict(frozen=True)

    problems: List[str] = Field(default_factory=lambda: ["camel"], min_length=1)
    methods: List[MethodKind] = Field(default_factory=lambda: [MethodKind.TQ_S], min_length=1)
    dims: List[int] = Field(default_factory=lambda: [1], min_length=1)
    budget: int = Field(default=settings.DEFAULT_BUDGET, ge=1)
    replicates: int = Field(default=settings.DEFAULT_REPLICATES, ge=1)
    root_seed: int = Field(default=0, ge=0, lt=2**64)

    sampler: SamplerKind = SamplerKind.MIXTURE
    split: SplitRule = SplitRule.MINSSE
    stop_max_samples: Optional[int] = Field(default=None, ge=1)
    stop_variance: Optional[float] = Field(default=None, gt=0)
    leaf_rule: LeafRule = LeafRule.RANDOM
    leaf_evals: int = Field(default=settings.DEFAULT_LEAF_EVALS, ge=1)
    active_fraction: float = Field(default=settings.DEFAULT_ACTIVE_FRACTION, ge=0, lt=1)
    budget_includes_leaf_evals: bool = True

    proposal: ProposalKind = ProposalKind.MIXTURE
    vegas: VegasSettings = Field(default_factory=VegasSettings)
    metropolis_step: float = Field(default=settings.METROPOLIS_STEP, gt=0)
    metropolis_burn_in: int = Field(default=settings.METROPOLIS_BURN_IN, ge=0)

    posterior_samples: int = Field(default=settings.DEFAULT_POSTERIOR_SAMPLES, ge=1)
    surrogate_samples: int = Field(default=settings.DEFAULT_SURROGATE_SAMPLES, ge=0)

    jobs: int = Field(default=1, ge=1)
    strict: bool = False
    output_dir: Path = Path("results")

    @field_validator("problems")
    @classmethod
    def _known_problems(cls, value: List[str]) -> List[str]:
        unknown = [p for p in value if p not in settings.SUPPORTED_PROBLEMS]
        if unknown:
            raise ValueError(
                f"unknown problems {unknown}; choose from {settings.SUPPORTED_PROBLEMS}"
            )
        return value

    @field_validator("dims")
    @classmethod
    def _positive_dims(cls, value: List[int]) -> List[int]:
        if any(d < 1 for d in value):
            raise ValueError(f"dimensions must be >= 1, got {value}")
        return value

    @model_validator(mode="after")
    def _budget_fits(self) -> "ExperimentConfig":
        if any(m.is_tree for m in self.methods) and self.budget_includes_leaf_evals:
            if self.budget < 1 + self.leaf_evals:
                raise ValueError(
                    f"budget {self.budget} leaves no initial samples "
                    f"with {self.leaf_evals} leaf evals"
                )
        return self

    def stopping_rule(self) -> Optional[StoppingRule]:
        """Explicit stopping rule, or None to use the per-dimension default."""
        rules = []
        if self.stop_max_samples is not None:
            rules.append(max_samples(self.stop_max_samples))
        if self.stop_variance is not None:
            rules.append(y_variance(self.stop_variance))
        return combine(*rules) if rules else None

    def n_runs(self) -> int:
        return len(self.problems) * len(self.methods) * len(self.dims) * self.replicates

    @classmethod
    def from_yaml(cls, path: Path, **overrides: Any) -> "ExperimentConfig":
        """
        Load a config file; non-None overrides win over file values.

        Raises:
            ConfigError: the file is unreadable or not a mapping
        """
        try:
            data = yaml.safe_load(Path(path).read_text()) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a mapping, got {type(data).__name__}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)

    def echo(self) -> Dict[str, Any]:
        """JSON-ready dump of the config."""
        return self.model_dump(mode="json")


class RunStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"


class RunRecord(BaseModel):
    """One row of runs.csv."""

    problem: str
    method: MethodKind
    dim: int
    replicate: int
    seed: int
    status: RunStatus = RunStatus.OK
    error: Optional[str] = None
    estimate: Optional[float] = None
    true_value: float
    percent_error: Optional[float] = None
    evals_sampling: int = 0
    evals_active: int = 0
    evals_leaf_integration: int = 0
    evals_total: int = 0
    n_leaves: Optional[int] = None
    sampler: Optional[str] = None
    split: Optional[str] = None
    leaf_rule: Optional[str] = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status is RunStatus.OK

    def sort_key(self) -> tuple:
        return (self.problem, self.method.value, self.dim, self.replicate)
