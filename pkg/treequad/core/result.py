"""
Integration results shared by tree quadrature and the baselines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np


@dataclass
class IntegralResult:
    """
    An integral estimate with its evaluation ledger.

    Tree methods fill the per-leaf arrays (``leaf_ids``, ``lower``, ``upper``,
    ``contributions``); baselines leave them empty and put their own
    statistics (weights, ESS, per-iteration estimates) in ``details``.
    """

    value: float
    method: str
    seed: Optional[int] = None
    evals_sampling: int = 0
    evals_active: int = 0
    evals_leaf_integration: int = 0
    leaf_ids: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    lower: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    upper: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    contributions: np.ndarray = field(default_factory=lambda: np.zeros(0))
    leaf_rule: Optional[str] = None
    split_rule: Optional[str] = None
    fallbacks: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    locator: Optional[Any] = None

    @property
    def total_evals(self) -> int:
        return self.evals_sampling + self.evals_active + self.evals_leaf_integration

    @property
    def n_leaves(self) -> int:
        return int(self.contributions.shape[0])

    def volumes(self) -> np.ndarray:
        """Per-leaf volumes, aligned with ``contributions``."""
        if self.n_leaves == 0:
            return np.zeros(0)
        return np.prod(self.upper - self.lower, axis=1)

    def percent_error(self, true_value: float) -> float:
        """Signed 100 * (estimate - truth) / truth; underestimates are negative."""
        return 100.0 * (self.value - true_value) / true_value
