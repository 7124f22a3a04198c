"""
Core Package

Tree quadrature: containers, split and stopping rules, tree construction and
leaf integration.

Key components:
- container.py: Container and AxialCut with the split operation
- split_rules.py: MinSSE, KD and random axial split rules
- stopping.py: Stopping conditions and the default stopping rule
- leaf_rules.py: Random, midpoint, mean and median container integrals
- tree.py: TQ-s and TQ-a builders, build-log replay, point location, integrate_tree
- result.py: IntegralResult shared with the baselines
"""

from .container import AxialCut, Container, split
from .leaf_rules import (
    ContainerIntegral,
    LeafRule,
    integrate_container,
    integrate_mean_y,
    integrate_median_y,
    integrate_midpoint,
    integrate_random,
)
from .result import IntegralResult
from .split_rules import (
    SplitDecision,
    SplitRule,
    choose_split,
    kd_split,
    min_sse_axial,
    random_axial,
    split_score,
    sse,
)
from .stopping import (
    StopKind,
    StoppingCondition,
    StoppingRule,
    combine,
    default_stopping,
    depth_cap,
    max_samples,
    y_variance,
)
from .tree import (
    BuildStep,
    LeafLocator,
    RefinementPop,
    Tree,
    build_tq_a,
    build_tq_s,
    integrate_tree,
    replay_tree,
)

__all__ = [
    "AxialCut",
    "BuildStep",
    "Container",
    "ContainerIntegral",
    "IntegralResult",
    "LeafLocator",
    "LeafRule",
    "RefinementPop",
    "SplitDecision",
    "SplitRule",
    "StopKind",
    "StoppingCondition",
    "StoppingRule",
    "Tree",
    "build_tq_a",
    "build_tq_s",
    "choose_split",
    "combine",
    "default_stopping",
    "depth_cap",
    "integrate_container",
    "integrate_mean_y",
    "integrate_median_y",
    "integrate_midpoint",
    "integrate_random",
    "integrate_tree",
    "kd_split",
    "max_samples",
    "min_sse_axial",
    "random_axial",
    "replay_tree",
    "split",
    "split_score",
    "sse",
    "y_variance",
]
