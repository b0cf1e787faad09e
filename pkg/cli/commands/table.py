import time
from typing import List

from cli.commands import add_format_argument, float_list
from cli.commands.invert import open_cache, solve_cached
from cli.config import constants
from cli.output import elapsed_ms
from models import OutputRecord
from services.log_service import logger


def register(subparsers) -> None:
    parser = subparsers.add_parser("table", help="Sample sizes over a grid of correlations and failure probabilities")
    parser.add_argument("--alpha", type=float, default=constants.TABLE_ALPHA)
    parser.add_argument("--rhos", type=float_list, default=list(constants.TABLE_RHOS), help="Comma-separated correlations")
    parser.add_argument("--deltas", type=float_list, default=list(constants.TABLE_DELTAS), help="Comma-separated failure probabilities")
    parser.add_argument("--cache", default=None, help="SQLite file caching inversions")
    add_format_argument(parser)
    parser.set_defaults(handler=run)


async def run(args) -> List[OutputRecord]:
    cache = open_cache(args.cache)
    if cache is not None:
        await cache.init_db()

    records = []
    for rho in args.rhos:
        for delta in args.deltas:
            started = time.perf_counter()
            result, method = await solve_cached(args.alpha, rho, delta, cache)
            if result.sample_size is None:
                logger.info(f"no certified sample size for rho={rho} delta={delta}")
            records.append(
                OutputRecord(
                    inputs={"alpha": args.alpha, "rho": rho, "delta": delta},
                    result=result,
                    method=method,
                    elapsed_ms=elapsed_ms(started),
                )
            )
    return records
