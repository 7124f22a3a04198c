"""
Desk-scale reproduction of the benchmark results (12,000 evaluations, 20 replicates).

These grids take a few minutes; run them with ``pytest -m slow``.
"""

import statistics

import pytest

from treequad.experiments import ExperimentConfig, MethodKind, run_grid

pytestmark = pytest.mark.slow


def median_errors(problem, methods, dims, absolute=False):
    """Median percent error (signed, or absolute) per (method, dim) over 20 replicates."""
    config = ExperimentConfig(
        problems=[problem], methods=methods, dims=dims, replicates=20, jobs=4
    )
    cells = {}
    for record in run_grid(config):
        assert record.ok, record.error
        error = abs(record.percent_error) if absolute else record.percent_error
        cells.setdefault((record.method, record.dim), []).append(error)
    return {key: statistics.median(errors) for key, errors in cells.items()}


def test_gaussian_one_dimension():
    """
    The Vegas bound is 0.5%, looser than the 0.1% quoted for the reference
    Vegas on this cell; this grid implementation measures about 0.25% here.
    """
    errors = median_errors(
        "gaussian", [MethodKind.TQ_S, MethodKind.VEGAS, MethodKind.SMC], [1], absolute=True
    )
    assert errors[(MethodKind.TQ_S, 1)] < 0.5
    assert errors[(MethodKind.VEGAS, 1)] < 0.5
    assert errors[(MethodKind.SMC, 1)] < 3.0


def test_camel_five_dimensions():
    errors = median_errors(
        "camel", [MethodKind.TQ_S, MethodKind.TQ_A, MethodKind.SMC], [5], absolute=True
    )
    tq_s = errors[(MethodKind.TQ_S, 5)]
    assert tq_s < 10.0
    assert tq_s < errors[(MethodKind.SMC, 5)]
    assert errors[(MethodKind.TQ_A, 5)] <= tq_s + 5.0


def test_gaussian_ten_dimensions_keeps_mass():
    errors = median_errors("gaussian", [MethodKind.SMC, MethodKind.TQ_S], [10])
    assert errors[(MethodKind.SMC, 10)] < -95.0
    assert errors[(MethodKind.TQ_S, 10)] > -90.0


def test_quad_camel():
    """
    The Vegas collapse is pinned at 5 dimensions, not 1: in 1-D this grid adapts
    to all four modes (median error about -0.6%), while at 5-D no first-iteration
    point sees any mass.
    """
    errors = median_errors("quad", [MethodKind.TQ_A], [1])
    assert abs(errors[(MethodKind.TQ_A, 1)]) < 1.0
    vegas = median_errors("quad", [MethodKind.VEGAS], [5])
    assert vegas[(MethodKind.VEGAS, 5)] < -50.0


def test_trees_generalise_to_higher_dimensions():
    methods = [MethodKind.TQ_S, MethodKind.SMC, MethodKind.VEGAS]
    errors = median_errors("camel", methods, [1, 3, 5, 7], absolute=True)
    tq_s = [errors[(MethodKind.TQ_S, dim)] for dim in (1, 3, 5, 7)]
    assert tq_s == sorted(tq_s)
    for dim in (5, 7):
        assert errors[(MethodKind.TQ_S, dim)] < errors[(MethodKind.SMC, dim)]
        assert errors[(MethodKind.TQ_S, dim)] < errors[(MethodKind.VEGAS, dim)]
