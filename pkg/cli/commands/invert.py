import asyncio
import math
import time
from typing import List, Optional, Tuple

from cli.commands import add_format_argument
from cli.config import settings
from cli.output import elapsed_ms
from models import InversionResult, InversionSpec, LogSampleSize, OutputRecord
from services.gbound_service import gbound_service
from services.result_cache_service import ResultCacheService
from services.log_service import logger
from utils.constants import ERROR_INFEASIBLE_INVERSION
from utils.errors import InfeasibleInversionError


def register(subparsers) -> None:
    parser = subparsers.add_parser("invert", help="Certified sample size reaching success probability 1 - delta")
    parser.add_argument("--alpha", type=float, required=True, help="Goal-softening percentile")
    noise = parser.add_mutually_exclusive_group(required=True)
    noise.add_argument("--rho", type=float, help="Gaussian copula correlation")
    noise.add_argument("--xi2", type=float, help="Noise-to-signal variance ratio")
    parser.add_argument("--delta", type=float, required=True, help="Allowed failure probability")
    parser.add_argument("--cache", default=None, help="SQLite file caching inversions")
    add_format_argument(parser)
    parser.set_defaults(handler=run)


def solve(alpha: float, rho: float, delta: float) -> Tuple[InversionResult, str]:
    """Invert one (alpha, rho, delta) cell; rho = 1 is the noiseless case."""
    if rho == 1.0:
        n = gbound_service.comonotonic_n(alpha, delta)
        bound = 1.0 if alpha == 1.0 else -math.expm1(n * math.log1p(-alpha))
        return InversionResult(sample_size=LogSampleSize.exact(n), bound_at_n=bound), "comonotonic"

    target = InversionSpec(alpha=alpha, rho=rho, delta=delta)
    size, omega = gbound_service.n_star_optimized(target)
    bound = None
    if size is not None and omega is not None:
        bound = gbound_service.bound_at_sample_size(size, alpha, rho, omega)
    return InversionResult(sample_size=size, omega_star=omega, bound_at_n=bound), "optimized_omega"


def open_cache(path: Optional[str]) -> Optional[ResultCacheService]:
    path = path or settings.cache_path
    return ResultCacheService(path) if path else None


async def solve_cached(alpha: float, rho: float, delta: float, cache: Optional[ResultCacheService]) -> Tuple[InversionResult, str]:
    if cache is None or rho == 1.0:
        return await asyncio.to_thread(solve, alpha, rho, delta)

    cell = (alpha, rho, delta, settings.omega_grid)
    cached = await cache.lookup(cell)
    if cached is not None:
        logger.debug(f"cache hit {cell}")
        return cached

    result, method = await asyncio.to_thread(solve, alpha, rho, delta)
    await cache.store(cell, result, method)
    return result, method


async def run(args) -> List[OutputRecord]:
    started = time.perf_counter()
    rho = gbound_service.rho_from_noise(args.xi2) if args.xi2 is not None else args.rho
    inputs = {"alpha": args.alpha, "rho": rho, "delta": args.delta}
    if args.xi2 is not None:
        inputs["xi2"] = args.xi2

    cache = open_cache(args.cache)
    if cache is not None:
        await cache.init_db()
    result, method = await solve_cached(args.alpha, rho, args.delta, cache)
    if result.sample_size is None:
        raise InfeasibleInversionError(f"{ERROR_INFEASIBLE_INVERSION} (alpha={args.alpha}, rho={rho}, delta={args.delta})")

    return [OutputRecord(inputs=inputs, result=result, method=method, elapsed_ms=elapsed_ms(started))]
