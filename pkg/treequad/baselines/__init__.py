"""
Baselines Package

Reference integrators the tree methods are compared against.

Key components:
- importance.py: Simple Monte Carlo, importance sampling and the prior/mixture proposals
- vegas.py: Classic separable adaptive-grid Vegas (VegasGrid, vegas)
"""

from .importance import (
    Proposal,
    effective_sample_size,
    importance_sampling,
    importance_with,
    mixture_proposal,
    prior_proposal,
    smc,
)
from .vegas import VegasGrid, VegasIteration, vegas

__all__ = [
    "Proposal",
    "VegasGrid",
    "VegasIteration",
    "effective_sample_size",
    "importance_sampling",
    "importance_with",
    "mixture_proposal",
    "prior_proposal",
    "smc",
    "vegas",
]
