"""
Exception hierarchy for ordsel.

Every error carries the process exit code the command line maps it to, so the
CLI error handler never has to keep its own lookup table.
"""


class OrdselError(Exception):
    """Base class for all ordsel errors."""

    exit_code: int = 1


class DomainError(OrdselError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 2


class ConfigurationError(OrdselError):
    """An environment override could not be parsed."""

    exit_code = 2


class UnsupportedFamilyError(OrdselError):
    """The requested method cannot be applied to this copula or problem."""

    exit_code = 3


class CertificationError(OrdselError):
    """The stochastic-dominance certificate failed for a caller-supplied omega."""

    exit_code = 4


class InfeasibleInversionError(OrdselError):
    """No certified finite sample size exists for the inversion request."""

    exit_code = 5


class AccuracyWarning(UserWarning):
    """Quadrature was asked for a regime where the integrand degenerates."""
