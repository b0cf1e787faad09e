"""
Curve data for bound-versus-truth plots.

One baseline problem (Gaussian copula, n, m, alpha, rho) with a single
parameter varied over a linear or logarithmic grid. Each row carries the
quadrature value, an optional Monte Carlo estimate and the optimized bound.
"""

import time
from typing import List

import numpy as np

from cli.commands import add_format_argument
from cli.config import constants
from cli.output import elapsed_ms
from models import CopulaModel, OutputRecord, RandomStream, SelectionProblem, SweepPoint
from services.gbound_service import gbound_service
from services.selection_service import selection_service
from utils.constants import ERROR_SWEEP_RANGE
from utils.errors import DomainError


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="Bound and quadrature along one varied parameter")
    parser.add_argument("--vary", choices=("n", "rho", "alpha"), required=True)
    parser.add_argument("--from", dest="start", type=float, required=True)
    parser.add_argument("--to", dest="stop", type=float, required=True)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--log-axis", action="store_true", help="Space points geometrically")
    parser.add_argument("--n", type=int, default=constants.BASELINE_N)
    parser.add_argument("--m", type=int, default=constants.BASELINE_M)
    parser.add_argument("--alpha", type=float, default=constants.BASELINE_ALPHA)
    parser.add_argument("--rho", type=float, default=constants.BASELINE_RHO)
    parser.add_argument("--reps", type=int, default=0, help="Monte Carlo replications per point (0 disables)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--timing", action="store_true", help="Report wall time even for seeded runs")
    add_format_argument(parser, default="csv")
    parser.set_defaults(handler=run)


def sweep_grid(vary: str, start: float, stop: float, points: int, log_axis: bool) -> List[float]:
    if points < 2 or not start < stop or (log_axis and start <= 0.0):
        raise DomainError(ERROR_SWEEP_RANGE)
    if vary in ("rho", "alpha") and not (0.0 < start and stop <= 1.0):
        raise DomainError(ERROR_SWEEP_RANGE)
    grid = np.geomspace(start, stop, points) if log_axis else np.linspace(start, stop, points)
    if vary == "n":
        if start < 1.0:
            raise DomainError(ERROR_SWEEP_RANGE)
        return [float(round(x)) for x in grid]
    return [float(x) for x in grid]


def run(args) -> List[OutputRecord]:
    grid = sweep_grid(args.vary, args.start, args.stop, args.points, args.log_axis)
    seeded = args.reps > 0
    records = []
    for index, x in enumerate(grid):
        started = time.perf_counter()
        n, alpha, rho = args.n, args.alpha, args.rho
        if args.vary == "n":
            n = int(x)
        elif args.vary == "alpha":
            alpha = x
        else:
            rho = x

        model = CopulaModel.gaussian(rho)
        prob = SelectionProblem.build(n, args.m, alpha)
        p_quadrature = selection_service.success_quadrature(model, prob).value
        p_mc = mc_stderr = None
        if seeded:
            estimate = selection_service.success_montecarlo(
                model, prob, args.reps, RandomStream(seed=args.seed, stream_index=index)
            )
            p_mc, mc_stderr = estimate.value, estimate.stderr
        bound, _ = gbound_service.optimized_lower_bound(n, alpha, rho)

        records.append(
            OutputRecord(
                inputs={"vary": args.vary, "n": n, "m": args.m, "alpha": alpha, "rho": rho},
                result=SweepPoint(x=x, p_quadrature=p_quadrature, p_mc=p_mc, mc_stderr=mc_stderr, lower_bound=bound),
                method="quadrature+bound",
                elapsed_ms=elapsed_ms(started, seeded=seeded, timing=args.timing),
            )
        )
    return records
