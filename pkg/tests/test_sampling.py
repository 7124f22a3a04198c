"""
Tests for the initial-sample generators.
"""

import logging

import numpy as np
import pytest
from pydantic import ValidationError

from treequad.config import settings
from treequad.errors import (
    EmptyBatchError,
    InvalidSampleCountError,
    SamplerFailureError,
    UnsupportedProblemError,
)
from treequad.problems import Domain, get_problem, make_constant, make_mixture_problem
from treequad.sampling import (
    SampleBatch,
    SamplerConfig,
    SamplerKind,
    draw_samples,
    sample_metropolis,
    sample_mixture_direct,
    sample_uniform,
)


class TestSampleBatch:
    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            SampleBatch(np.zeros((3, 2)), np.zeros(2))

    def test_len_and_dim(self):
        batch = SampleBatch(np.zeros((4, 3)), np.ones(4))
        assert len(batch) == 4
        assert batch.dim == 3

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            SamplerConfig(n=0)
        with pytest.raises(ValidationError):
            SamplerConfig(n=10, step=0.0)


class TestUniform:
    def test_inside_domain_and_evaluated(self, camel_2d):
        batch = sample_uniform(camel_2d, 200, seed=1)
        assert batch.locations.shape == (200, 2)
        assert camel_2d.domain.contains(batch.locations).all()
        assert np.allclose(batch.values, camel_2d.integrand(batch.locations))
        assert batch.evaluations == 200

    def test_same_seed_same_batch(self, camel_2d):
        a = sample_uniform(camel_2d, 50, seed=3)
        b = sample_uniform(camel_2d, 50, seed=3)
        assert np.array_equal(a.locations, b.locations)

    def test_rejects_zero_count(self, camel_2d):
        with pytest.raises(InvalidSampleCountError):
            sample_uniform(camel_2d, 0, seed=0)


class TestMixtureDirect:
    def test_exact_count_inside_domain(self, camel_2d):
        batch = sample_mixture_direct(camel_2d, 1000, seed=2)
        assert len(batch) == 1000
        assert camel_2d.domain.contains(batch.locations).all()
        assert batch.evaluations == 1000

    def test_draws_split_between_modes(self, camel_1d):
        batch = sample_mixture_direct(camel_1d, 4000, seed=5)
        near_first = batch.locations[:, 0] < 0.5
        assert batch.locations[:, 0].mean() == pytest.approx(0.5, abs=0.03)
        assert 0.45 < near_first.mean() < 0.55

    def test_deterministic(self, camel_2d):
        a = sample_mixture_direct(camel_2d, 100, seed=9)
        b = sample_mixture_direct(camel_2d, 100, seed=9)
        assert np.array_equal(a.locations, b.locations)

    def test_needs_mixture(self, constant_3d):
        with pytest.raises(UnsupportedProblemError):
            sample_mixture_direct(constant_3d, 10, seed=0)

    def test_rejection_cap(self, monkeypatch):
        far = make_mixture_problem("far", Domain.cube(0.0, 1.0, 1), np.array([[100.0]]))
        monkeypatch.setattr(settings, "MAX_CONSECUTIVE_REJECTIONS", 5000)
        with pytest.raises(SamplerFailureError):
            sample_mixture_direct(far, 10, seed=0)


class TestMetropolis:
    def test_burn_in_dropped(self, camel_1d):
        batch = sample_metropolis(camel_1d, 600, seed=4, step=0.05, burn_in=100)
        assert len(batch) == 500
        assert camel_1d.domain.contains(batch.locations).all()
        assert 0.0 < batch.acceptance_rate <= 1.0

    def test_values_match_locations(self, camel_1d):
        batch = sample_metropolis(camel_1d, 300, seed=4, burn_in=0)
        assert np.allclose(batch.values, camel_1d.integrand(batch.locations))

    def test_out_of_domain_proposals_not_evaluated(self, camel_1d):
        batch = sample_metropolis(camel_1d, 300, seed=4, burn_in=0)
        assert batch.evaluations <= 301

    def test_burn_in_consumes_chain(self, camel_1d):
        with pytest.raises(EmptyBatchError):
            sample_metropolis(camel_1d, 100, seed=0, burn_in=100)

    def test_stuck_chain_warns(self, camel_1d, caplog):
        with caplog.at_level(logging.WARNING, logger="treequad"):
            batch = sample_metropolis(camel_1d, 200, seed=0, step=1e6, burn_in=10)
        assert batch.acceptance_rate == 0.0
        assert batch.warnings
        assert "accepted no proposals" in caplog.text
        assert np.allclose(batch.locations, 0.5)

    def test_flat_target_accepts_every_interior_proposal(self):
        problem = make_constant(2)
        batch = sample_metropolis(problem, 2000, seed=1, step=0.05, burn_in=0)
        accepted = round(batch.acceptance_rate * 2000)
        assert accepted == batch.evaluations - 1
        assert accepted > 0.8 * 2000

    def test_flat_target_spreads_uniformly(self):
        problem = make_constant(2)
        batch = sample_metropolis(problem, 20_000, seed=1, step=0.25, burn_in=500)
        assert np.allclose(batch.locations.mean(axis=0), 0.5, atol=0.05)
        assert np.allclose(batch.locations.var(axis=0), 1.0 / 12.0, atol=0.015)

    def test_camel_chain_visits_both_modes(self):
        problem = get_problem("camel", 2)
        batch = sample_metropolis(problem, 20_000, seed=1, step=0.05, burn_in=500)
        means = batch.locations.mean(axis=0)
        assert np.all((means > 0.47) & (means < 0.53))

    def test_draw_samples_dispatch(self, camel_1d):
        config = SamplerConfig(kind=SamplerKind.METROPOLIS, n=300, seed=1, burn_in=50)
        assert len(draw_samples(camel_1d, config)) == 250
        config = SamplerConfig(kind=SamplerKind.UNIFORM, n=30, seed=1)
        assert len(draw_samples(camel_1d, config)) == 30
