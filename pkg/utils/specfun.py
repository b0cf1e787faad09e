"""
Standard Gaussian special functions.

phi, Phi, Phi_inv and the Q-function, plus the exponential Q-function bounds
used by the stochastic-dominance certificate. Every function accepts a Python
float or a numpy array and returns the same shape (floats for scalar input).
The heavy lifting is done by scipy.special's Cephes erf/erfc kernels.
"""

import math
from typing import Tuple, Union

import numpy as np
from scipy import special

from utils.constants import (
    ERROR_NEGATIVE_ARGUMENT,
    ERROR_OMEGA_RANGE,
    ERROR_PROBABILITY_RANGE,
)
from utils.errors import DomainError

ArrayLike = Union[float, np.ndarray]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _unwrap(value: np.ndarray) -> ArrayLike:
    if np.ndim(value) == 0:
        return float(value)
    return value


def phi(x: ArrayLike) -> ArrayLike:
    """Standard normal density."""
    x = np.asarray(x, dtype=float)
    return _unwrap(_INV_SQRT_2PI * np.exp(-0.5 * x * x))


def Phi(x: ArrayLike) -> ArrayLike:
    """Standard normal CDF (handles +-inf)."""
    return _unwrap(special.ndtr(np.asarray(x, dtype=float)))


def Phi_inv(p: ArrayLike) -> ArrayLike:
    """Standard normal quantile, refined by one Newton step on Phi."""
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise DomainError(ERROR_PROBABILITY_RANGE)
    x = special.ndtri(p)
    # Residual Phi(x) - p; the upper tail evaluates it as (1 - p) - Q(x) so the
    # subtraction never cancels against a Phi(x) close to one.
    residual = np.where(x <= 0.0, special.ndtr(x) - p, (1.0 - p) - special.ndtr(-x))
    density = _INV_SQRT_2PI * np.exp(-0.5 * x * x)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(density > 0.0, residual / density, 0.0)
    return _unwrap(x - np.where(np.isfinite(step), step, 0.0))


def q_func(x: ArrayLike) -> ArrayLike:
    """Gaussian Q-function 1 - Phi(x), evaluated on the complementary branch."""
    return _unwrap(special.ndtr(-np.asarray(x, dtype=float)))


def log_q(x: ArrayLike) -> ArrayLike:
    """log Q(x) without underflow for large positive x."""
    return _unwrap(special.log_ndtr(-np.asarray(x, dtype=float)))


def q_power(x: ArrayLike, n: float) -> ArrayLike:
    """Q(x)**n computed as exp(n log Q(x))."""
    return _unwrap(np.exp(n * np.asarray(log_q(x))))


def q_bound_constants(omega: float) -> Tuple[float, float]:
    """Constants (c1, c2) of the exponential Q-function lower bound."""
    if not 0.0 < omega < 0.5 * math.pi:
        raise DomainError(ERROR_OMEGA_RANGE)
    c1 = 0.5 - omega / math.pi
    c2 = 1.0 / (math.tan(omega) * (math.pi - 2.0 * omega))
    return c1, c2


def q_bounds(x: ArrayLike, omega: float) -> Tuple[ArrayLike, ArrayLike]:
    """Lower and upper exponential bounds sandwiching Q(x) for x >= 0.

    lower = c1 * exp(-c2 x^2), upper = exp(-x^2 / 2) / 2.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError(ERROR_NEGATIVE_ARGUMENT)
    c1, c2 = q_bound_constants(omega)
    lower = c1 * np.exp(-c2 * arr * arr)
    upper = 0.5 * np.exp(-0.5 * arr * arr)
    return _unwrap(lower), _unwrap(upper)
