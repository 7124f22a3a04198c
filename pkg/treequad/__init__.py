"""
treequad: Tree Quadrature

Numerical integration through a regression-tree surrogate of the integrand,
with the baselines, benchmark problems, diagnostics and experiment harness
needed to compare it.

Key components:
- problems: Domains, integration problems and the Gaussian / Camel / Quad benchmarks
- sampling: Initial-sample generators (uniform, direct mixture, Metropolis)
- core: Containers, split and stopping rules, TQ-s / TQ-a and tree integration
- baselines: Simple Monte Carlo, importance sampling and Vegas
- diagnostics: Removal curves, cumulative curves and surrogate sampling
- experiments: Grid runner, run records, summaries and figure data
- cli: The ``treequad`` command
"""

__version__ = "1.0.0"

from .baselines import importance_sampling, mixture_proposal, smc, vegas
from .core import (
    IntegralResult,
    LeafRule,
    SplitRule,
    Tree,
    build_tq_a,
    build_tq_s,
    integrate_tree,
    replay_tree,
)
from .diagnostics import cumulative_curve, membership, removal_curve, surrogate_sample
from .errors import TreeQuadError
from .problems import Domain, Problem, get_problem, make_constant
from .sampling import SampleBatch, draw_samples

__all__ = [
    "Domain",
    "IntegralResult",
    "LeafRule",
    "Problem",
    "SampleBatch",
    "SplitRule",
    "Tree",
    "TreeQuadError",
    "__version__",
    "build_tq_a",
    "build_tq_s",
    "cumulative_curve",
    "draw_samples",
    "get_problem",
    "importance_sampling",
    "integrate_tree",
    "make_constant",
    "membership",
    "mixture_proposal",
    "removal_curve",
    "replay_tree",
    "smc",
    "surrogate_sample",
    "vegas",
]
