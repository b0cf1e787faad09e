import time
from typing import List

from cli.commands import add_copula_arguments, add_format_argument
from cli.config import settings
from cli.output import elapsed_ms
from models import CopulaModel, OutputRecord, RandomStream, SelectionProblem
from services.selection_service import selection_service
from utils.constants import ERROR_NO_CLOSED_FORM
from utils.errors import UnsupportedFamilyError

METHODS = ("quad", "brute", "mc", "closed")


def register(subparsers) -> None:
    parser = subparsers.add_parser("psuccess", help="Success probability of horse-race selection")
    add_copula_arguments(parser)
    parser.add_argument("--n", type=int, required=True, help="Sample size")
    parser.add_argument("--m", type=int, default=1, help="Selection size")
    parser.add_argument("--alpha", type=float, required=True, help="Goal-softening percentile")
    parser.add_argument("--method", choices=METHODS, default="quad")
    parser.add_argument("--reps", type=int, default=100_000, help="Monte Carlo replications")
    parser.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    parser.add_argument("--tol", type=float, default=None, help="Quadrature absolute tolerance")
    parser.add_argument("--grid", type=int, default=500, help="Brute-force nodes per dimension")
    parser.add_argument("--timing", action="store_true", help="Report wall time even for seeded runs")
    add_format_argument(parser)
    parser.set_defaults(handler=run)


def run(args) -> List[OutputRecord]:
    started = time.perf_counter()
    model = CopulaModel.build(args.copula, args.param)
    prob = SelectionProblem.build(args.n, args.m, args.alpha)
    inputs = {"copula": args.copula, "param": args.param, "n": args.n, "m": args.m, "alpha": args.alpha}

    if args.method == "quad":
        tol = settings.quad_tol if args.tol is None else args.tol
        inputs["tol"] = tol
        estimate = selection_service.success_quadrature(model, prob, tol)
    elif args.method == "brute":
        inputs["grid"] = args.grid
        estimate = selection_service.success_bruteforce(model, prob, args.grid)
    elif args.method == "mc":
        inputs.update(reps=args.reps, seed=args.seed)
        estimate = selection_service.success_montecarlo(model, prob, args.reps, RandomStream(seed=args.seed))
    else:
        estimate = selection_service.success_closed_form(model, prob)
        if estimate is None:
            raise UnsupportedFamilyError(ERROR_NO_CLOSED_FORM)

    seeded = args.method == "mc"
    return [
        OutputRecord(
            inputs=inputs,
            result=estimate,
            method=estimate.method.value,
            elapsed_ms=elapsed_ms(started, seeded=seeded, timing=args.timing),
        )
    ]
