"""
Selection service for ordsel.

This service handles:
- Success probability of selecting the m best-looking of n noisy candidates,
  by one-dimensional quadrature, a nested simplex oracle and Monte Carlo
- Closed forms where they exist and the randomized-threshold variant
- Limits as n grows, the general bounds, and sample-size search by quadrature
"""

import math
import warnings
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Chebyshev
from scipy import integrate

from cli.config import constants, settings
from models import (
    CopulaFamily,
    CopulaModel,
    EstimateMethod,
    ProbabilityEstimate,
    RandomStream,
    SelectionProblem,
)
from services.copula_service import copula_service
from services.log_service import logger
from utils.constants import (
    ERROR_ALPHA_RANGE,
    ERROR_BRUTEFORCE_DIMENSION,
    ERROR_BRUTEFORCE_FAMILY,
    ERROR_BRUTEFORCE_GRID,
    ERROR_DELTA_RANGE,
    ERROR_QUADRATURE_FAMILY,
    ERROR_RANK_SUBSET,
    ERROR_REPLICATIONS,
    ERROR_SELECTION_SIZE,
)
from utils.errors import AccuracyWarning, DomainError, UnsupportedFamilyError
from utils.parallel import ordered_map

# Chebyshev fit of the survival integrand: tail coefficients below this are noise
_CHEB_TAIL = 1e-13
_MAX_BISECTIONS = 12

# Mass of the m-th order statistic below this is dropped
_LEFT_CUTOFF = 1e-18

_OPEN_LOW = np.finfo(float).tiny
_OPEN_HIGH = np.nextafter(1.0, 0.0)


class _Piece:
    """One panel of the piecewise Chebyshev model of h and its antiderivative G."""

    __slots__ = ("a", "b", "h", "G")

    def __init__(self, a: float, b: float, h: Chebyshev, G: Chebyshev):
        self.a = a
        self.b = b
        self.h = h
        self.G = G


def _check_limit_args(m: int, alpha: float) -> None:
    if m < 1:
        raise DomainError(ERROR_SELECTION_SIZE)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(ERROR_ALPHA_RANGE)


def _log_falling(n: int, m: int) -> float:
    """log(n! / (n - m)!)"""
    return math.lgamma(n + 1) - math.lgamma(n - m + 1)


class SelectionService:
    """Service for success probabilities of horse-race selection."""

    # ------------------------------------------------------------ quadrature

    def _survival(self, model: CopulaModel, alpha: float) -> Callable[[np.ndarray], np.ndarray]:
        """h(t) = 1 - C(alpha | t), with t clamped into the open unit interval."""

        def h(t):
            return 1.0 - copula_service.conditional_cdf(model, alpha, np.clip(t, _OPEN_LOW, _OPEN_HIGH))

        return h

    def _panel_edges(self, model: CopulaModel, prob: SelectionProblem) -> List[float]:
        n, m = prob.n, prob.m
        t_min = _LEFT_CUTOFF / n
        t_max = min(1.0, (50.0 + 10.0 * m) / n)
        edges = [0.0]
        edge = t_min
        while edge < t_max:
            edges.append(edge)
            edge *= 10.0
        edges.append(t_max)

        # The conditional CDF of a degenerate Gaussian jumps at alpha or 1 - alpha
        if not model.has_density:
            jump = prob.alpha if model.param > 0 else 1.0 - prob.alpha
            if 0.0 < jump < t_max and jump not in edges:
                edges.append(jump)
        return sorted(edges)

    def _fit(self, h, a: float, b: float, depth: int) -> List[Chebyshev]:
        poly = Chebyshev.interpolate(h, settings.chebyshev_degree, domain=[a, b])
        if depth >= _MAX_BISECTIONS or np.max(np.abs(poly.coef[-3:])) <= _CHEB_TAIL:
            return [poly]
        mid = 0.5 * (a + b)
        return self._fit(h, a, mid, depth + 1) + self._fit(h, mid, b, depth + 1)

    def _pieces(self, h, edges: Sequence[float]) -> List[_Piece]:
        """Piecewise interpolant of h and its running integral G(t) = int_0^t h."""
        pieces = []
        running = 0.0
        for index, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
            # The first panel holds negligible mass; one fit is enough there
            depth = _MAX_BISECTIONS if index == 0 else 0
            for poly in self._fit(h, a, b, depth):
                lo, hi = poly.domain
                antiderivative = poly.integ(lbnd=lo) + running
                pieces.append(_Piece(float(lo), float(hi), poly, antiderivative))
                running = float(antiderivative(hi))
        return pieces

    def success_quadrature(
        self, model: CopulaModel, prob: SelectionProblem, tol: Optional[float] = None
    ) -> ProbabilityEstimate:
        """Success probability from the symmetry-reduced one-dimensional integral.

        p = 1 - K int_0^1 h(t) G(t)^(m-1) (1-t)^(n-m) dt with h(t) = 1 - C(alpha|t),
        G its antiderivative and K = n! / ((n-m)! (m-1)!).
        """
        if model.family is CopulaFamily.COMONOTONIC:
            raise UnsupportedFamilyError(ERROR_QUADRATURE_FAMILY)
        tol = settings.quad_tol if tol is None else tol
        if tol <= 0.0:
            raise DomainError("Quadrature tolerance must be positive")

        n, m, alpha = prob.n, prob.m, prob.alpha
        if n > constants.ACCURACY_WARNING_N:
            message = f"Quadrature at n={n} is beyond the validated range; the integrand is nearly degenerate"
            logger.warning(message)
            warnings.warn(message, AccuracyWarning, stacklevel=2)
        if alpha == 1.0:
            return ProbabilityEstimate(value=1.0, method=EstimateMethod.QUADRATURE)

        h = self._survival(model, alpha)
        pieces = self._pieces(h, self._panel_edges(model, prob))
        log_k = _log_falling(n, m) - math.lgamma(m)
        piece_tol = tol / len(pieces)

        total = 0.0
        for piece in pieces:

            def integrand(t: float, piece: _Piece = piece) -> float:
                h_t = min(max(float(piece.h(t)), 0.0), 1.0)
                if h_t == 0.0:
                    return 0.0
                exponent = log_k + (n - m) * math.log1p(-t)
                if m > 1:
                    exponent += (m - 1) * math.log(max(float(piece.G(t)), 1e-300))
                return h_t * math.exp(exponent)

            value, _ = integrate.quad(integrand, piece.a, piece.b, epsabs=piece_tol, epsrel=1e-12, limit=200)
            total += value

        logger.debug(f"quadrature {model.label} n={n} m={m} alpha={alpha}: {len(pieces)} panels")
        return ProbabilityEstimate(value=min(max(1.0 - total, 0.0), 1.0), method=EstimateMethod.QUADRATURE)

    # ----------------------------------------------------------- brute force

    def success_bruteforce(self, model: CopulaModel, prob: SelectionProblem, grid: int) -> ProbabilityEstimate:
        """Nested Gauss-Legendre over the ordered simplex 0 <= z1 <= ... <= zm <= 1.

        Each inner coordinate is z_{k-1} = z_k * x, so every level integrates over
        [0, 1] with Jacobian z_k.
        """
        if not model.has_density:
            raise UnsupportedFamilyError(ERROR_BRUTEFORCE_FAMILY)
        if prob.m > 3:
            raise UnsupportedFamilyError(ERROR_BRUTEFORCE_DIMENSION)
        if grid < 50:
            raise DomainError(ERROR_BRUTEFORCE_GRID)

        n, m, alpha = prob.n, prob.m, prob.alpha
        if alpha == 1.0:
            return ProbabilityEstimate(value=1.0, method=EstimateMethod.BRUTE_FORCE)

        nodes, weights = np.polynomial.legendre.leggauss(grid)
        x = 0.5 * (nodes + 1.0)
        w = 0.5 * weights
        h = self._survival(model, alpha)

        def outer(z: np.ndarray) -> np.ndarray:
            return h(z) * np.exp((n - m) * np.log1p(-z))

        if m == 1:
            integral = float(np.dot(w, outer(x)))
        elif m == 2:
            inner = x * (h(np.outer(x, x)) @ w)
            integral = float(np.dot(w, outer(x) * inner))
        else:
            integral = 0.0
            for z3, w3 in zip(x, w):
                z2 = z3 * x
                inner1 = z2 * (h(np.outer(z2, x)) @ w)
                inner2 = z3 * float(np.dot(w, h(z2) * inner1))
                integral += w3 * float(outer(np.array([z3]))[0]) * inner2

        value = 1.0 - math.exp(_log_falling(n, m)) * integral
        return ProbabilityEstimate(value=min(max(value, 0.0), 1.0), method=EstimateMethod.BRUTE_FORCE)

    # ----------------------------------------------------------- Monte Carlo

    def _run_shards(
        self,
        model: CopulaModel,
        n: int,
        reps: int,
        stream: RandomStream,
        count: Callable[[np.ndarray, np.ndarray], int],
    ) -> ProbabilityEstimate:
        """Split reps into fixed-size shards, each on its own Philox stream."""
        if reps < 1:
            raise DomainError(ERROR_REPLICATIONS)
        rows = max(1, settings.mc_shard_size // n)
        shards = [(k, min(rows, reps - k * rows)) for k in range(-(-reps // rows))]

        def run(shard: Tuple[int, int]) -> int:
            index, size = shard
            u, v = copula_service.sample_pairs(model, (size, n), stream.shard_generator(index))
            return count(u, v)

        successes = sum(ordered_map(run, shards))
        p = successes / reps
        return ProbabilityEstimate(
            value=p,
            method=EstimateMethod.MONTE_CARLO,
            stderr=math.sqrt(p * (1.0 - p) / reps),
            replications=reps,
        )

    def success_montecarlo(
        self, model: CopulaModel, prob: SelectionProblem, reps: int, stream: RandomStream
    ) -> ProbabilityEstimate:
        """Simulate the selection: keep the m smallest observed values, succeed if any true value is <= alpha."""
        m, alpha = prob.m, prob.alpha

        def count(u: np.ndarray, v: np.ndarray) -> int:
            # Stable sort breaks floating-point ties by sample index
            chosen = np.argsort(u, axis=1, kind="stable")[:, :m]
            picked = np.take_along_axis(v, chosen, axis=1)
            return int(np.count_nonzero(picked.min(axis=1) <= alpha))

        return self._run_shards(model, prob.n, reps, stream, count)

    def success_subset_montecarlo(
        self,
        model: CopulaModel,
        prob: SelectionProblem,
        ranks: Sequence[int],
        reps: int,
        stream: RandomStream,
    ) -> ProbabilityEstimate:
        """Like success_montecarlo but selects the candidates at the given observed ranks (1-based)."""
        chosen_ranks = sorted(set(int(r) for r in ranks))
        if len(chosen_ranks) != prob.m or len(ranks) != prob.m or chosen_ranks[0] < 1 or chosen_ranks[-1] > prob.n:
            raise DomainError(ERROR_RANK_SUBSET)
        columns = np.asarray(chosen_ranks) - 1
        alpha = prob.alpha

        def count(u: np.ndarray, v: np.ndarray) -> int:
            order = np.argsort(u, axis=1, kind="stable")[:, columns]
            picked = np.take_along_axis(v, order, axis=1)
            return int(np.count_nonzero(picked.min(axis=1) <= alpha))

        return self._run_shards(model, prob.n, reps, stream, count)

    def success_threshold_montecarlo(
        self, model: CopulaModel, prob: SelectionProblem, reps: int, stream: RandomStream
    ) -> ProbabilityEstimate:
        """Simulate the randomized-threshold rule: select every candidate with u <= m/n."""
        threshold = prob.m / prob.n
        alpha = prob.alpha

        def count(u: np.ndarray, v: np.ndarray) -> int:
            return int(np.count_nonzero(np.any((u <= threshold) & (v <= alpha), axis=1)))

        return self._run_shards(model, prob.n, reps, stream, count)

    # ------------------------------------------------------- closed forms

    def success_closed_form(self, model: CopulaModel, prob: SelectionProblem) -> Optional[ProbabilityEstimate]:
        """Exact success probability where one is known, otherwise None."""
        n, m, alpha = prob.n, prob.m, prob.alpha
        if alpha == 1.0:
            value = 1.0
        elif m == n or model.family is CopulaFamily.COMONOTONIC:
            value = -math.expm1(n * math.log1p(-alpha))
        elif model.family is CopulaFamily.INDEPENDENCE:
            value = -math.expm1(m * math.log1p(-alpha))
        else:
            return None
        return ProbabilityEstimate(value=value, method=EstimateMethod.CLOSED_FORM)

    def success_random_selection(self, prob: SelectionProblem) -> float:
        """Success of a uniformly random size-m selection."""
        if prob.alpha == 1.0:
            return 1.0
        return -math.expm1(prob.m * math.log1p(-prob.alpha))

    def success_randomized_threshold(self, model: CopulaModel, prob: SelectionProblem) -> ProbabilityEstimate:
        """1 - (1 - C(m/n, alpha))^n for the rule that keeps every u <= m/n."""
        c = float(copula_service.joint_cdf(model, prob.m / prob.n, prob.alpha))
        value = 1.0 if c >= 1.0 else -math.expm1(prob.n * math.log1p(-c))
        return ProbabilityEstimate(value=min(max(value, 0.0), 1.0), method=EstimateMethod.CLOSED_FORM)

    # ------------------------------------------------------ limits, bounds

    def randomized_limit(self, model: CopulaModel, m: int, alpha: float) -> float:
        _check_limit_args(m, alpha)
        return -math.expm1(-m * copula_service.boundary_conditional_cdf(model, alpha))

    def fixed_limit(self, model: CopulaModel, m: int, alpha: float) -> float:
        _check_limit_args(m, alpha)
        boundary = copula_service.boundary_conditional_cdf(model, alpha)
        if boundary >= 1.0:
            return 1.0
        return -math.expm1(m * math.log1p(-boundary))

    def general_bounds(self, prob: SelectionProblem) -> Tuple[float, float]:
        """(1 - (1-alpha)^m, 1 - (1-alpha)^n)"""
        if prob.alpha == 1.0:
            return 1.0, 1.0
        log_miss = math.log1p(-prob.alpha)
        return -math.expm1(prob.m * log_miss), -math.expm1(prob.n * log_miss)

    # ----------------------------------------------------------- inversion

    def _exact_or_quadrature(self, model: CopulaModel, prob: SelectionProblem) -> float:
        closed = self.success_closed_form(model, prob)
        if closed is not None:
            return closed.value
        return self.success_quadrature(model, prob).value

    def n_star_search(self, model: CopulaModel, m: int, alpha: float, delta: float, n_max: int) -> Optional[int]:
        """Smallest n <= n_max whose success probability reaches 1 - delta, or None.

        Relies on success being non-decreasing in n, which holds for positively
        dependent copulas.
        """
        _check_limit_args(m, alpha)
        if not 0.0 < delta <= 1.0:
            raise DomainError(ERROR_DELTA_RANGE)
        target = 1.0 - delta
        limit = self.fixed_limit(model, m, alpha)
        if limit < 1.0 and limit <= target:
            logger.info(f"{model.label}: limit {limit:.6g} never reaches {target:.6g}")
            return None

        def reaches(n: int) -> bool:
            return self._exact_or_quadrature(model, SelectionProblem.build(n, m, alpha)) >= target

        if m > n_max:
            return None
        if reaches(m):
            return m

        lo, hi = m, m
        while True:
            if hi >= n_max:
                return None
            lo, hi = hi, min(2 * hi, n_max)
            if reaches(hi):
                break

        # reaches(lo) is False and reaches(hi) is True
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if reaches(mid):
                hi = mid
            else:
                lo = mid
        return hi


# Global service instance
selection_service = SelectionService()
