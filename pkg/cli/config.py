"""
Application configuration for ordsel.

This module provides configuration management for the library and the CLI:
environment variable overrides, numerical defaults, and fixed constants.
"""

import math
import os
from typing import Optional

from pydantic import BaseModel, Field

from utils.constants import ERROR_BAD_SETTING, ERROR_THREADS
from utils.errors import ConfigurationError


class Settings(BaseModel):
    """Application settings configuration."""

    # Application Info
    app_name: str = "ordsel"
    app_description: str = "Success probability, bounds and sample-size inversion for noisy ordinal selection"
    app_version: str = "0.1.0"

    # Parallelism
    threads: int = Field(default=1, ge=1)

    # Logging
    log_level: str = "WARNING"

    # Quadrature
    quad_tol: float = Field(default=1e-10, gt=0.0)
    chebyshev_degree: int = 32

    # Omega search
    omega_grid: int = Field(default=512, ge=512)
    refine_iterations: int = Field(default=40, ge=1)

    # Certificate
    certificate_grid: int = Field(default=1000, ge=100)

    # Monte Carlo: upper bound on sampled pairs per shard (rows * n)
    mc_shard_size: int = Field(default=2_000_000, ge=1)

    # Result cache
    cache_path: Optional[str] = None


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{ERROR_BAD_SETTING} {name}: {raw!r}")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigurationError(f"{ERROR_BAD_SETTING} {name}: {raw!r}")


def get_settings() -> Settings:
    """Get application settings with environment variable overrides."""
    threads = os.getenv("ORDSEL_THREADS")
    if threads is not None and (not threads.strip().isdigit() or int(threads) < 1):
        raise ConfigurationError(f"{ERROR_THREADS}: {threads!r}")
    try:
        return Settings(
            threads=int(threads) if threads is not None else 1,
            log_level=os.getenv("ORDSEL_LOG_LEVEL", "WARNING").upper(),
            quad_tol=_env_float("ORDSEL_QUAD_TOL", 1e-10),
            omega_grid=_env_int("ORDSEL_OMEGA_GRID", 512),
            certificate_grid=_env_int("ORDSEL_CERT_GRID", 1000),
            cache_path=os.getenv("ORDSEL_CACHE") or None,
        )
    except ValueError as e:
        raise ConfigurationError(str(e))


def reload_settings() -> Settings:
    """Re-read the environment into the shared settings instance."""
    fresh = get_settings()
    for name in Settings.model_fields:
        setattr(settings, name, getattr(fresh, name))
    return settings


# Global settings instance; a malformed environment falls back to defaults here
# and is reported by the CLI when it calls reload_settings().
try:
    settings = get_settings()
except ConfigurationError:
    settings = Settings()


class AppConstants:
    """Application constants and default values."""

    # Omega search interval endpoints
    OMEGA_EPSILON = 1e-6
    OMEGA_MAX = 0.5 * math.pi - 1e-6

    # log10(n) at or below which a sample size is kept as an exact integer
    EXACT_LOG10_LIMIT = 15.0

    # Quadrature regimes
    ACCURACY_WARNING_N = 10**6

    # Output
    CSV_SIGNIFICANT_DIGITS = 12

    # Sweep baseline
    BASELINE_N = 100
    BASELINE_M = 1
    BASELINE_ALPHA = 0.05
    BASELINE_RHO = 0.4

    # Table defaults
    TABLE_ALPHA = 0.01
    TABLE_RHOS = (0.01, 0.3, 0.6, 0.9, 0.99)
    TABLE_DELTAS = (0.01, 0.05, 0.1)


# Export commonly used values
constants = AppConstants()
