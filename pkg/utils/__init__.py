"""
Shared helpers for ordsel.

This package provides:
- Standard Gaussian special functions and Q-function bounds
- The exception hierarchy and error message constants
- A deterministic thread-pool map
"""

from .errors import (
    AccuracyWarning,
    CertificationError,
    ConfigurationError,
    DomainError,
    InfeasibleInversionError,
    OrdselError,
    UnsupportedFamilyError,
)

__all__ = [
    "AccuracyWarning",
    "CertificationError",
    "ConfigurationError",
    "DomainError",
    "InfeasibleInversionError",
    "OrdselError",
    "UnsupportedFamilyError",
]
