"""
Diagnostics Package

Reliability checks for a fitted tree.

Key components:
- membership.py: Half-open leaf membership by brute force over leaf boxes
- curves.py: Container-removal re-estimates, cumulative contributions, posterior fractions
- surrogate.py: Contribution-weighted surrogate posterior sampling
"""

from .curves import (
    CumulativeCurve,
    CumulativePoint,
    RemovalCurve,
    RemovalOrder,
    RemovalPoint,
    cumulative_curve,
    leaf_order,
    posterior_fraction,
    removal_curve,
)
from .membership import locate_in_boxes, locate_result_leaves, membership
from .surrogate import SurrogateSample, surrogate_sample

__all__ = [
    "CumulativeCurve",
    "CumulativePoint",
    "RemovalCurve",
    "RemovalOrder",
    "RemovalPoint",
    "SurrogateSample",
    "cumulative_curve",
    "leaf_order",
    "locate_in_boxes",
    "locate_result_leaves",
    "membership",
    "posterior_fraction",
    "removal_curve",
    "surrogate_sample",
]
