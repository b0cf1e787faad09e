"""
Services package for ordsel.

This package provides the numerical services:
- Bivariate copula evaluation and sampling
- Success probability of noisy ordinal selection (quadrature, oracles, limits)
- Gaussian-copula lower bound, certificate and sample-size inversion
- Result cache backed by SQLite
"""

from .copula_service import (
    copula_service,
)

from .selection_service import (
    selection_service,
)

from .gbound_service import (
    gbound_service,
)

from .result_cache_service import (
    ResultCacheService,
)

__all__ = [
    # Copula Service
    "copula_service",

    # Selection Service
    "selection_service",

    # Gaussian Bound Service
    "gbound_service",

    # Result cache
    "ResultCacheService",
]
