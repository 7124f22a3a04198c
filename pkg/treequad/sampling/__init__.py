"""
Sampling Package

Generators of initial sample locations X0 and integrand values Y0.

Key components:
- batch.py: SampleBatch, SamplerConfig and the SamplerKind enum
- samplers.py: uniform, direct truncated-mixture and random-walk Metropolis samplers
"""

from .batch import SampleBatch, SamplerConfig, SamplerKind
from .samplers import (
    SAMPLERS,
    Sampler,
    draw_samples,
    sample_metropolis,
    sample_mixture_direct,
    sample_uniform,
)

__all__ = [
    "SAMPLERS",
    "SampleBatch",
    "Sampler",
    "SamplerConfig",
    "SamplerKind",
    "draw_samples",
    "sample_metropolis",
    "sample_mixture_direct",
    "sample_uniform",
]
