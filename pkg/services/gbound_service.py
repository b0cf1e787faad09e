"""
Gaussian-copula bound service for ordsel.

This service handles:
- Constants of the exponential Q-function lower bound and the parameters
  of the dominating Gaussian for the minimum of n observations
- The three-interval stochastic-dominance certificate
- The analytic lower bound on success probability and its omega-optimized form
- Sample-size inversion through a quartic in x = sqrt(log(n * c1)), kept in
  log space so sizes like 10^47007 are representable
- Noise-to-correlation conversion and the noiseless (comonotonic) inversion
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy import optimize

from cli.config import constants, settings
from models import InversionSpec, LogSampleSize, OmegaCertificate
from services.log_service import logger
from utils import specfun
from utils.constants import (
    ERROR_ALPHA_RANGE,
    ERROR_DEGENERATE_POLYNOMIAL,
    ERROR_DELTA_RANGE,
    ERROR_GRID_SIZE,
    ERROR_NC1_TOO_SMALL,
    ERROR_NEGATIVE_NOISE,
    ERROR_RHO_RANGE,
)
from utils.errors import DomainError
from utils.parallel import ordered_map

# log(log 2) < 0
LOG_LOG_2 = math.log(math.log(2.0))
_LN_10 = math.log(10.0)
# steps above floor(root) tried before the exact size is given up
_MAX_ROUNDING_STEPS = 16


def _check_bound_args(alpha: float, rho: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise DomainError(ERROR_ALPHA_RANGE)
    if not 0.0 < rho <= 1.0:
        raise DomainError(ERROR_RHO_RANGE)


def _omega_grid() -> np.ndarray:
    return np.linspace(constants.OMEGA_EPSILON, constants.OMEGA_MAX, settings.omega_grid)


class GaussianBoundService:
    """Service for the Gaussian-copula lower bound and sample-size inversion."""

    def omega_constants(self, omega: float) -> Tuple[float, float]:
        """(c1, c2) = (1/2 - omega/pi, cot(omega) / (pi - 2 omega))"""
        return specfun.q_bound_constants(omega)

    # ------------------------------------------------ dominating Gaussian

    @staticmethod
    def _params_from_log_nc1(log_nc1: float, c2: float) -> Tuple[float, float]:
        if log_nc1 <= 0.0:
            raise DomainError(ERROR_NC1_TOO_SMALL)
        mu = -math.sqrt(log_nc1 / c2)
        sigma2 = -LOG_LOG_2 / (2.0 * c2 * (log_nc1 - LOG_LOG_2))
        return mu, sigma2

    def dominating_params(self, n: int, omega: float) -> Tuple[float, float]:
        """Mean and variance of the Gaussian that dominates min of n standard normals."""
        c1, c2 = self.omega_constants(omega)
        return self._params_from_log_nc1(math.log(n) + math.log(c1), c2)

    # --------------------------------------------------------- certificate

    @staticmethod
    def _right_interval_ok(log_n: float, c1: float, c2: float, mu: float, sigma2: float) -> bool:
        """(n/2 - c2/s2)(n log 2 + mu^2/s2 - log c1) >= c2^2 mu^2 / s2^2, with n = exp(log_n).

        Both factors are written as n * (...) so the check never forms n itself.
        """
        inv_n = math.exp(-log_n)
        first = 0.5 - (c2 / sigma2) * inv_n
        second = math.log(2.0) + (mu * mu / sigma2 - math.log(c1)) * inv_n
        if first <= 0.0 or second <= 0.0:
            return False
        lhs = 2.0 * log_n + math.log(first) + math.log(second)
        if mu == 0.0:
            return True
        rhs = 2.0 * math.log(c2 * abs(mu) / sigma2)
        return lhs >= rhs

    def certify(self, n: int, omega: float, grid: Optional[int] = None) -> OmegaCertificate:
        """Run the three checks that make N(mu_n, sigma_n^2) dominate min of n normals."""
        grid = settings.certificate_grid if grid is None else grid
        if grid < 100:
            raise DomainError(ERROR_GRID_SIZE)
        c1, c2 = self.omega_constants(omega)
        log_n = math.log(n)
        log_nc1 = log_n + math.log(c1)

        # (i) the dominating Gaussian only exists for n * c1 > 1
        if log_nc1 <= 0.0:
            return OmegaCertificate(omega=omega, c1=c1, c2=c2, n=n, certified=False)
        mu, sigma2 = self._params_from_log_nc1(log_nc1, c2)
        sigma = math.sqrt(sigma2)

        def result(certified: bool) -> OmegaCertificate:
            return OmegaCertificate(omega=omega, c1=c1, c2=c2, mu_n=mu, sigma_n2=sigma2, n=n, certified=certified)

        # (ii) Q(z)^n <= Q((z - mu) / sigma) on [mu, 0]
        z = np.linspace(mu, 0.0, grid)
        lhs = n * specfun.log_q(z)
        rhs = specfun.log_q((z - mu) / sigma)
        if np.any(lhs > rhs + 1e-12):
            return result(False)

        # (iii) closed-form condition on the right interval
        return result(self._right_interval_ok(log_n, c1, c2, mu, sigma2))

    def first_certified_n(self, omega: float, n_max: int) -> Optional[int]:
        """Smallest n >= ceil(1/c1) whose certificate passes, or None up to n_max."""
        c1, _ = self.omega_constants(omega)
        n = max(1, math.ceil(1.0 / c1))
        while n <= n_max:
            if self.certify(n, omega).certified:
                return n
            n += 1
        return None

    # -------------------------------------------------------------- bound

    @staticmethod
    def _bound_formula(alpha: float, rho: float, mu: float, sigma2: float) -> float:
        if alpha == 1.0:
            return 1.0
        z = (specfun.Phi_inv(alpha) - rho * mu) / math.sqrt(1.0 - rho * rho + rho * rho * sigma2)
        return specfun.Phi(z)

    def lower_bound(self, n: int, alpha: float, rho: float, omega: float) -> float:
        """Analytic lower bound on success probability; 0 when the certificate fails."""
        _check_bound_args(alpha, rho)
        cert = self.certify(n, omega)
        if not cert.certified:
            return 0.0
        return self._bound_formula(alpha, rho, cert.mu_n, cert.sigma_n2)

    def bound_at_sample_size(self, size: LogSampleSize, alpha: float, rho: float, omega: float) -> float:
        """lower_bound for a sample size that may only be known as log10(n)."""
        if size.exact_n is not None:
            return self.lower_bound(size.exact_n, alpha, rho, omega)
        _check_bound_args(alpha, rho)
        c1, c2 = self.omega_constants(omega)
        mu, sigma2 = self._params_from_log_nc1(size.log10_n * _LN_10 + math.log(c1), c2)
        return self._bound_formula(alpha, rho, mu, sigma2)

    def _refine(self, objective, index: int, grid: np.ndarray) -> Tuple[float, float]:
        """Bounded scalar minimization between the neighbours of grid[index]."""
        lo = grid[max(index - 1, 0)]
        hi = grid[min(index + 1, len(grid) - 1)]
        found = optimize.minimize_scalar(
            objective,
            bounds=(lo, hi),
            method="bounded",
            options={"maxiter": settings.refine_iterations, "xatol": 1e-12},
        )
        return float(found.x), float(found.fun)

    def optimized_lower_bound(self, n: int, alpha: float, rho: float) -> Tuple[float, Optional[float]]:
        """Maximize lower_bound over omega; (0, None) when no omega certifies."""
        _check_bound_args(alpha, rho)
        grid = _omega_grid()
        values = np.array(ordered_map(lambda omega: self.lower_bound(n, alpha, rho, float(omega)), grid))
        # argmax keeps the first maximum, i.e. the smaller omega on ties
        best = int(np.argmax(values))
        if values[best] <= 0.0:
            logger.info(f"no omega certifies n={n}")
            return 0.0, None

        logger.info(f"omega scan n={n}: best grid value {values[best]:.6g} at omega={grid[best]:.6g}")
        omega, negated = self._refine(lambda w: -self.lower_bound(n, alpha, rho, w), best, grid)
        if -negated > values[best]:
            return -negated, omega
        return float(values[best]), float(grid[best])

    # ----------------------------------------------------------- inversion

    def quartic_coefficients(self, target: InversionSpec, omega: float) -> Tuple[float, float, float, float, float]:
        """Coefficients (a4, a3, a2, a1, a0) of the quartic in x whose greatest
        real root solves lower_bound(n) = 1 - delta with log(n * c1) = x^2.
        """
        if target.alpha == 1.0 or target.delta == 1.0:
            raise DomainError("Quartic inversion needs alpha < 1 and delta < 1")
        _, c2 = self.omega_constants(omega)
        rho = target.rho
        a = specfun.Phi_inv(target.alpha)
        b = specfun.Phi_inv(1.0 - target.delta)
        root_c2 = math.sqrt(c2)
        k = a * a - b * b + rho * rho * b * b

        a4 = -2.0 * rho * rho / LOG_LOG_2
        a3 = -4.0 * a * rho * root_c2 / LOG_LOG_2
        a2 = 2.0 * rho * rho - 2.0 * c2 * k / LOG_LOG_2
        a1 = 4.0 * root_c2 * a * rho
        a0 = 2.0 * c2 * k - rho * rho * b * b
        return a4, a3, a2, a1, a0

    def solve_quartic_greatest_real_root(self, a4: float, a3: float, a2: float, a1: float, a0: float) -> Optional[float]:
        """Greatest real root from companion-matrix eigenvalues, Newton-polished twice.

        Leading zero coefficients drop the degree; None when no root is real.
        """
        coeffs = np.array([a4, a3, a2, a1, a0], dtype=float)
        nonzero = np.flatnonzero(coeffs)
        if nonzero.size == 0:
            raise DomainError(ERROR_DEGENERATE_POLYNOMIAL)
        coeffs = coeffs[nonzero[0]:]
        if coeffs.size == 1:
            return None

        degree = coeffs.size - 1
        companion = np.zeros((degree, degree))
        companion[0, :] = -coeffs[1:] / coeffs[0]
        companion[1:, :-1] = np.eye(degree - 1)
        roots = np.linalg.eigvals(companion)

        real = roots[np.abs(roots.imag) <= 1e-9 * (1.0 + np.abs(roots.real))].real
        if real.size == 0:
            return None
        x = float(real.max())

        derivative = np.polyder(coeffs)
        for _ in range(2):
            slope = np.polyval(derivative, x)
            if slope == 0.0:
                break
            x -= np.polyval(coeffs, x) / slope
        return float(x)

    def _solve_log_n(self, target: InversionSpec, omega: float) -> Optional[float]:
        """Natural log of the continuous n* at this omega, or None without a positive root."""
        c1, _ = self.omega_constants(omega)
        x = self.solve_quartic_greatest_real_root(*self.quartic_coefficients(target, omega))
        if x is None or x <= 0.0:
            return None
        return x * x - math.log(c1)

    def _certified_size(self, log_n: float, omega: float, target: Optional[InversionSpec] = None) -> Optional[LogSampleSize]:
        """Certified size for a continuous root exp(log_n).

        With a target, the exact size is the first n at or above the floor of
        the root whose bound reaches 1 - delta.
        """
        c1, c2 = self.omega_constants(omega)
        log10_n = log_n / _LN_10
        if log10_n <= constants.EXACT_LOG10_LIMIT:
            n = math.floor(math.exp(log_n))
            if target is None:
                if n < 1 or not self.certify(n, omega).certified:
                    return None
                return LogSampleSize.exact(n)

            n = max(n, 1)
            goal = 1.0 - target.delta
            for _ in range(_MAX_ROUNDING_STEPS):
                if self.lower_bound(n, target.alpha, target.rho, omega) >= goal:
                    return LogSampleSize.exact(n)
                n += 1
            return None

        # Beyond exact integers: checks (i) and (iii) only, in log-n arithmetic
        log_nc1 = log_n + math.log(c1)
        if log_nc1 <= 0.0:
            return None
        mu, sigma2 = self._params_from_log_nc1(log_nc1, c2)
        if not self._right_interval_ok(log_n, c1, c2, mu, sigma2):
            return None
        return LogSampleSize(log10_n=log10_n)

    def n_star(self, target: InversionSpec, omega: float) -> Optional[LogSampleSize]:
        """Certified sample size reaching 1 - delta at this omega; None stands for infinity."""
        if target.alpha == 1.0 or target.delta == 1.0:
            return LogSampleSize.exact(1)
        log_n = self._solve_log_n(target, omega)
        if log_n is None:
            return None
        return self._certified_size(log_n, omega, target)

    def n_star_optimized(self, target: InversionSpec) -> Tuple[Optional[LogSampleSize], Optional[float]]:
        """Minimize n_star over omega; (None, None) when no omega gives a certified n."""
        if target.alpha == 1.0 or target.delta == 1.0:
            return LogSampleSize.exact(1), None

        def objective(omega: float) -> float:
            log_n = self._solve_log_n(target, omega)
            if log_n is None or self._certified_size(log_n, omega) is None:
                return math.inf
            return log_n

        grid = _omega_grid()
        values = np.array(ordered_map(lambda omega: objective(float(omega)), grid))
        best = int(np.argmin(values))
        if not np.isfinite(values[best]):
            logger.info(f"no omega inverts alpha={target.alpha} rho={target.rho} delta={target.delta}")
            return None, None

        logger.info(f"omega scan alpha={target.alpha} rho={target.rho} delta={target.delta}: log n {values[best]:.6g} at omega={grid[best]:.6g}")
        omega, refined = self._refine(objective, best, grid)
        if not refined < values[best]:
            omega = float(grid[best])
        return self.n_star(target, omega), omega

    # ------------------------------------------------------- conversions

    def rho_from_noise(self, xi2: float) -> float:
        """Correlation of (Z, X) when X = Z + noise with noise-to-signal ratio xi2."""
        if not xi2 >= 0.0:
            raise DomainError(ERROR_NEGATIVE_NOISE)
        if math.isinf(xi2):
            return 0.0
        return 1.0 / math.sqrt(1.0 + xi2)

    def comonotonic_n(self, alpha: float, delta: float) -> int:
        """Noiseless inversion: smallest n with 1 - (1 - alpha)^n >= 1 - delta."""
        if not 0.0 < alpha <= 1.0:
            raise DomainError(ERROR_ALPHA_RANGE)
        if not 0.0 < delta <= 1.0:
            raise DomainError(ERROR_DELTA_RANGE)
        if alpha == 1.0 or delta == 1.0:
            return 1
        # Tolerance keeps exact powers from rounding up one step
        return max(1, math.ceil(math.log(delta) / math.log1p(-alpha) - 1e-9))


# Global service instance
gbound_service = GaussianBoundService()
