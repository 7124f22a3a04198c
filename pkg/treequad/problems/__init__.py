"""
Problems Package

Integration problems and their analytic ground truth.

Key components:
- domain.py: Axis-aligned hyper-rectangles (Domain)
- problem.py: Problem (h = f * p with an evaluation ledger) and GaussianMixtureSpec
- oracle.py: Separable CDF-product truth and a 1-D trapezium reference
- benchmarks.py: Gaussian, Camel and Quad factories plus the id registry
"""

from .benchmarks import (
    PROBLEMS,
    get_problem,
    make_camel,
    make_constant,
    make_gaussian,
    make_mixture_problem,
    make_quad_camel,
)
from .domain import Domain
from .oracle import mode_masses, trapezoid_reference, true_value_oracle
from .problem import GaussianMixtureSpec, Problem

__all__ = [
    "PROBLEMS",
    "Domain",
    "GaussianMixtureSpec",
    "Problem",
    "get_problem",
    "make_camel",
    "make_constant",
    "make_gaussian",
    "make_mixture_problem",
    "make_quad_camel",
    "mode_masses",
    "trapezoid_reference",
    "true_value_oracle",
]
