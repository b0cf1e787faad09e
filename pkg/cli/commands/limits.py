import time
from typing import List

from cli.commands import add_copula_arguments, add_format_argument
from cli.output import elapsed_ms
from models import CopulaModel, LimitsResult, OutputRecord
from services.copula_service import copula_service
from services.selection_service import selection_service


def register(subparsers) -> None:
    parser = subparsers.add_parser("limits", help="Large-n limits of fixed-size and randomized-threshold selection")
    add_copula_arguments(parser)
    parser.add_argument("--m", type=int, default=1, help="Selection size")
    parser.add_argument("--alpha", type=float, required=True, help="Goal-softening percentile")
    add_format_argument(parser)
    parser.set_defaults(handler=run)


def run(args) -> List[OutputRecord]:
    started = time.perf_counter()
    model = CopulaModel.build(args.copula, args.param)
    result = LimitsResult(
        boundary_cdf=copula_service.boundary_conditional_cdf(model, args.alpha),
        fixed_limit=selection_service.fixed_limit(model, args.m, args.alpha),
        randomized_limit=selection_service.randomized_limit(model, args.m, args.alpha),
        kendall_tau=copula_service.kendall_tau(model),
    )
    inputs = {"copula": args.copula, "param": args.param, "m": args.m, "alpha": args.alpha}
    return [OutputRecord(inputs=inputs, result=result, method="closed_form", elapsed_ms=elapsed_ms(started))]
