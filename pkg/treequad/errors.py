"""
Exception hierarchy for treequad.

Library code raises these; only the CLI turns them into exit codes.
Each error also subclasses the builtin category it refines so callers
that only know ``ValueError`` or ``RuntimeError`` still catch it.
"""


class TreeQuadError(Exception):
    """Base class for every error raised by treequad."""


class ConfigError(TreeQuadError):
    """Experiment or CLI configuration is inconsistent."""


class InvalidDimensionError(TreeQuadError, ValueError):
    """A problem was requested with dimension < 1."""


class UnknownProblemError(TreeQuadError, KeyError):
    """No benchmark problem is registered under the requested id."""


class UnsupportedProblemError(TreeQuadError):
    """The problem lacks the structure an operation needs (e.g. an isotropic mixture)."""


class InvalidSampleCountError(TreeQuadError, ValueError):
    """A sample or evaluation count was below its minimum."""


class EmptyBatchError(TreeQuadError, ValueError):
    """A sampler would return no samples."""


class SamplerFailureError(TreeQuadError, RuntimeError):
    """A sampler could not produce valid draws (e.g. rejection cap exceeded)."""


class InvalidCutError(TreeQuadError, ValueError):
    """An axial cut does not lie strictly inside the container bounds."""


class EmptyContainerError(TreeQuadError, ValueError):
    """A container integration rule needs samples but the container holds none."""


class DegenerateContainerError(TreeQuadError):
    """No valid cut exists for a container under the chosen split rule."""


class EmptyInputError(TreeQuadError, ValueError):
    """A tree was requested from an empty sample batch."""


class InvalidProposalError(TreeQuadError, ValueError):
    """An importance proposal has zero density where the integrand is non-zero."""


class NoMassError(TreeQuadError, ValueError):
    """No leaf carries positive integral mass to sample from."""


class InvalidInputError(TreeQuadError, ValueError):
    """Diagnostic input cannot support the requested estimate."""
