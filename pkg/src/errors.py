"""
Exception hierarchy of the package.

Every error raised on purpose derives from `ScenarioRiskError`, so callers
(and the CLI) can catch the whole family at once.
"""

__all__ = [
    "ScenarioRiskError",
    "DomainError",
    "DimensionError",
    "InfeasibleProblemError",
    "UnsupportedProblemError",
    "ValidationError",
]


class ScenarioRiskError(Exception):
    """Base class of all package errors."""


class DomainError(ScenarioRiskError, ValueError):
    """A mathematical precondition does not hold (k > N, t < 0, a pole, beta outside (0,1), ...)."""


class DimensionError(DomainError):
    """Multi-indices of different lengths, or more criteria than an operation supports."""


class InfeasibleProblemError(ScenarioRiskError):
    """The scenario constraints admit no decision."""


class UnsupportedProblemError(ScenarioRiskError):
    """The decision problem lacks a capability the operation needs (e.g. a risk oracle)."""


class ValidationError(ScenarioRiskError):
    """A command-line configuration is invalid."""
