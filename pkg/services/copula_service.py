"""
Bivariate copula service for ordsel.

This service handles:
- Joint CDF C(u, v) and conditional CDF C(v | u) = dC/du for every family
- The boundary conditional CDF lim_{u -> 0+} C(v | u)
- Closed-form conditional quantiles and seeded sampling of (U, V) pairs
- A grid check of stochastically increasing positive dependence
- Kendall's tau as a one-number dependence summary

Clayton and Frank are evaluated in log/expm1 form throughout so large
parameters do not overflow u**-theta or exp(theta).
"""

import math
from typing import Tuple, Union

import numpy as np
from scipy import integrate, special

from models import CopulaFamily, CopulaModel, RandomStream
from utils import specfun
from utils.constants import (
    ERROR_BOUNDARY_RANGE,
    ERROR_CONDITIONING_RANGE,
    ERROR_GRID_SIZE,
    ERROR_UNIT_SQUARE,
)
from utils.errors import DomainError

ArrayLike = Union[float, np.ndarray]

_TWO_PI = 2.0 * math.pi


def _unwrap(value) -> ArrayLike:
    if np.ndim(value) == 0:
        return float(value)
    return value


def _gaussian_joint(h: float, k: float, rho: float) -> float:
    """Bivariate standard normal CDF for |rho| < 1.

    Phi(h)Phi(k) plus the integral of the bivariate density over correlation,
    written with r = sin(theta) so the integrand stays bounded as rho -> 1.
    """
    if rho == 0.0:
        return specfun.Phi(h) * specfun.Phi(k)

    def integrand(theta: float) -> float:
        s = math.sin(theta)
        c2 = math.cos(theta) ** 2
        return math.exp(-(h * h - 2.0 * h * k * s + k * k) / (2.0 * c2))

    value, _ = integrate.quad(integrand, 0.0, math.asin(rho), epsabs=1e-15, epsrel=1e-13, limit=200)
    return specfun.Phi(h) * specfun.Phi(k) + value / _TWO_PI


class CopulaService:
    """Service for evaluating and sampling bivariate copulas."""

    # ------------------------------------------------------------------ joint

    def joint_cdf(self, model: CopulaModel, u: ArrayLike, v: ArrayLike) -> ArrayLike:
        """C(u, v) on the unit square."""
        u_arr, v_arr = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        if np.any((u_arr < 0.0) | (u_arr > 1.0) | (v_arr < 0.0) | (v_arr > 1.0)):
            raise DomainError(ERROR_UNIT_SQUARE)

        family = model.family
        if family is CopulaFamily.INDEPENDENCE:
            out = u_arr * v_arr
        elif family is CopulaFamily.COMONOTONIC:
            out = np.minimum(u_arr, v_arr)
        elif family is CopulaFamily.GAUSSIAN:
            out = np.vectorize(lambda a, b: self._gaussian_joint_point(model.param, a, b), otypes=[float])(u_arr, v_arr)
        elif family is CopulaFamily.CLAYTON:
            out = self._clayton_joint(model.param, u_arr, v_arr)
        else:
            out = self._frank_joint(model.param, u_arr, v_arr)

        # Uniform margins hold exactly on the boundary of the square
        out = np.where(u_arr == 1.0, v_arr, out)
        out = np.where(v_arr == 1.0, u_arr, out)
        out = np.where((u_arr == 0.0) | (v_arr == 0.0), 0.0, out)
        return _unwrap(np.clip(out, 0.0, 1.0))

    @staticmethod
    def _gaussian_joint_point(rho: float, u: float, v: float) -> float:
        if u <= 0.0 or v <= 0.0:
            return 0.0
        if u >= 1.0 or v >= 1.0:
            return min(u, v)
        if rho == 1.0:
            return min(u, v)
        if rho == -1.0:
            return max(u + v - 1.0, 0.0)
        return _gaussian_joint(specfun.Phi_inv(u), specfun.Phi_inv(v), rho)

    @staticmethod
    def _clayton_joint(theta: float, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            a = -theta * np.log(u)
            b = -theta * np.log(v)
            hi = np.maximum(a, b)
            lo = np.minimum(a, b)
            # log(u^-theta + v^-theta - 1) = hi + log1p(e^(lo-hi) - e^-hi)
            log_sum = hi + np.log1p(np.exp(lo - hi) - np.exp(-hi))
            out = np.exp(-log_sum / theta)
        return np.where(np.isfinite(out), out, 0.0)

    @staticmethod
    def _frank_joint(theta: float, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        # C = lo - log(1 + e^-t(hi-lo) - e^-t*hi - e^-t(1-lo)) / t + log1p(-e^-t) / t
        inner = np.exp(-theta * (hi - lo)) - np.exp(-theta * hi) - np.exp(-theta * (1.0 - lo))
        with np.errstate(divide="ignore", invalid="ignore"):
            out = lo - np.log1p(inner) / theta + np.log1p(-math.exp(-theta)) / theta
        return np.where(np.isfinite(out), out, 0.0)

    # ------------------------------------------------------------ conditional

    def conditional_cdf(self, model: CopulaModel, v: ArrayLike, u: ArrayLike) -> ArrayLike:
        """C(v | u) = dC(u, v)/du for v in [0, 1] and u in (0, 1)."""
        v_arr, u_arr = np.broadcast_arrays(np.asarray(v, dtype=float), np.asarray(u, dtype=float))
        if np.any((v_arr < 0.0) | (v_arr > 1.0)):
            raise DomainError(ERROR_UNIT_SQUARE)
        if np.any((u_arr <= 0.0) | (u_arr >= 1.0)):
            raise DomainError(ERROR_CONDITIONING_RANGE)
        return _unwrap(np.clip(self._conditional(model, v_arr, u_arr), 0.0, 1.0))

    def _conditional(self, model: CopulaModel, v: np.ndarray, u: np.ndarray) -> np.ndarray:
        family = model.family
        if family is CopulaFamily.INDEPENDENCE:
            return v.astype(float, copy=True)
        if family is CopulaFamily.COMONOTONIC:
            return (u <= v).astype(float)
        if family is CopulaFamily.GAUSSIAN:
            rho = model.param
            if rho == 1.0:
                return (u <= v).astype(float)
            if rho == -1.0:
                return (1.0 - u <= v).astype(float)
            with np.errstate(divide="ignore"):
                zv = special.ndtri(v)
            zu = special.ndtri(u)
            return special.ndtr((zv - rho * zu) / math.sqrt(1.0 - rho * rho))
        if family is CopulaFamily.CLAYTON:
            return self._clayton_conditional(model.param, v, u)
        return self._frank_conditional(model.param, v, u)

    @staticmethod
    def _clayton_conditional(theta: float, v: np.ndarray, u: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            a = -theta * np.log(u)
            b = -theta * np.log(v)
            hi = np.maximum(a, b)
            lo = np.minimum(a, b)
            log_sum = hi + np.log1p(np.exp(lo - hi) - np.exp(-hi))
            # u^(-theta-1) * S^(-1/theta-1)
            log_out = (theta + 1.0) / theta * a - (1.0 / theta + 1.0) * log_sum
            out = np.exp(log_out)
        return np.where(v <= 0.0, 0.0, np.where(np.isfinite(out), out, 0.0))

    @staticmethod
    def _frank_conditional(theta: float, v: np.ndarray, u: np.ndarray) -> np.ndarray:
        num = -np.expm1(-theta * v)
        gap = np.exp(-theta * np.abs(v - u))
        # v >= u: num / (num + e^-t(v-u) - e^-t(1-u))
        upper = num / (num + gap - np.exp(-theta * (1.0 - u)))
        # v < u: scaled by e^-t(u-v) so no exponent is positive
        lower = num * gap / (num * gap + 1.0 - np.exp(-theta * (1.0 - v)))
        with np.errstate(invalid="ignore"):
            out = np.where(v >= u, upper, lower)
        return np.where(v <= 0.0, 0.0, out)

    def boundary_conditional_cdf(self, model: CopulaModel, v: float) -> float:
        """lim_{u -> 0+} C(v | u) for v in (0, 1]."""
        if not 0.0 < v <= 1.0:
            raise DomainError(ERROR_BOUNDARY_RANGE)
        family = model.family
        if family is CopulaFamily.INDEPENDENCE:
            return float(v)
        if family is CopulaFamily.FRANK:
            theta = model.param
            return math.expm1(-theta * v) / math.expm1(-theta)
        if family is CopulaFamily.GAUSSIAN:
            if model.param > 0.0:
                return 1.0
            if model.param == 0.0:
                return float(v)
            return 1.0 if v == 1.0 else 0.0
        # Clayton with theta > 0 and the comonotonic copula
        return 1.0

    # --------------------------------------------------------------- sampling

    def conditional_quantile(self, model: CopulaModel, w: ArrayLike, u: ArrayLike) -> ArrayLike:
        """Inverse of C(. | u): the v with C(v | u) = w."""
        w_arr, u_arr = np.broadcast_arrays(np.asarray(w, dtype=float), np.asarray(u, dtype=float))
        return _unwrap(self._quantile(model, w_arr, u_arr))

    def _quantile(self, model: CopulaModel, w: np.ndarray, u: np.ndarray) -> np.ndarray:
        family = model.family
        if family is CopulaFamily.INDEPENDENCE:
            return w.astype(float, copy=True)
        if family is CopulaFamily.COMONOTONIC:
            return u.astype(float, copy=True)
        if family is CopulaFamily.GAUSSIAN:
            rho = model.param
            return special.ndtr(rho * special.ndtri(u) + math.sqrt(1.0 - rho * rho) * special.ndtri(w))
        theta = model.param
        if family is CopulaFamily.CLAYTON:
            with np.errstate(divide="ignore", over="ignore"):
                t = np.expm1(-theta / (1.0 + theta) * np.log(w))
                log_inner = np.logaddexp(np.log(t) - theta * np.log(u), 0.0)
            return np.exp(-log_inner / theta)
        # Frank: ratio of two log-sum-exps, finite for any theta > 0
        with np.errstate(divide="ignore"):
            log_w = np.log(w)
            log_rest = np.log1p(-w) - theta * u
        v = -(np.logaddexp(log_rest, log_w - theta) - np.logaddexp(log_w, log_rest)) / theta
        return np.clip(v, 0.0, 1.0)

    def sample_pairs(self, model: CopulaModel, size, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
        """Draw (U, V) arrays of the given shape from one generator."""
        if model.family is CopulaFamily.GAUSSIAN:
            rho = model.param
            z_obs = rng.standard_normal(size)
            z_true = rho * z_obs + math.sqrt(1.0 - rho * rho) * rng.standard_normal(size)
            return special.ndtr(z_obs), special.ndtr(z_true)
        # Uniforms on (0, 1] keep log(u) finite
        u = 1.0 - rng.random(size)
        if model.family is CopulaFamily.COMONOTONIC:
            return u, u.copy()
        w = 1.0 - rng.random(size)
        return u, self._quantile(model, w, u)

    def sample_pair(self, model: CopulaModel, stream: RandomStream) -> Tuple[float, float]:
        """Draw one (U, V) pair from the stream's generator."""
        u, v = self.sample_pairs(model, 1, stream.generator)
        return float(u[0]), float(v[0])

    # ------------------------------------------------------------- dependence

    def sipd_check(self, model: CopulaModel, grid_size: int) -> bool:
        """True iff C(v | u) is non-increasing in u over an interior grid."""
        if grid_size < 3:
            raise DomainError(ERROR_GRID_SIZE)
        points = np.linspace(0.0, 1.0, grid_size + 2)[1:-1]
        vv, uu = np.meshgrid(points, points, indexing="ij")
        values = self._conditional(model, vv, uu)
        return bool(np.all(np.diff(values, axis=1) <= 1e-12))

    def kendall_tau(self, model: CopulaModel) -> float:
        family = model.family
        if family is CopulaFamily.INDEPENDENCE:
            return 0.0
        if family is CopulaFamily.COMONOTONIC:
            return 1.0
        if family is CopulaFamily.GAUSSIAN:
            return 2.0 / math.pi * math.asin(model.param)
        theta = model.param
        if family is CopulaFamily.CLAYTON:
            return theta / (theta + 2.0)
        # Frank: 1 - 4/theta * (1 - D1(theta)) with the first Debye function
        debye, _ = integrate.quad(lambda t: t / math.expm1(t) if t > 0.0 else 1.0, 0.0, theta)
        return 1.0 - 4.0 / theta * (1.0 - debye / theta)


# Global service instance
copula_service = CopulaService()
