import time
from typing import List

from cli.commands import add_format_argument
from cli.output import elapsed_ms
from models import BoundResult, OutputRecord
from services.log_service import logger
from services.gbound_service import gbound_service
from utils.constants import ERROR_CERTIFICATION_FAILED
from utils.errors import CertificationError


def register(subparsers) -> None:
    parser = subparsers.add_parser("bound", help="Gaussian-copula lower bound on success probability")
    parser.add_argument("--n", type=int, required=True, help="Sample size")
    parser.add_argument("--alpha", type=float, required=True, help="Goal-softening percentile")
    parser.add_argument("--rho", type=float, required=True, help="Gaussian copula correlation")
    parser.add_argument("--omega", type=float, default=None, help="Fix omega instead of optimizing")
    add_format_argument(parser)
    parser.set_defaults(handler=run)


def run(args) -> List[OutputRecord]:
    started = time.perf_counter()
    inputs = {"n": args.n, "alpha": args.alpha, "rho": args.rho, "omega": args.omega}

    if args.omega is not None:
        certificate = gbound_service.certify(args.n, args.omega)
        if not certificate.certified:
            logger.warning(f"omega={args.omega} does not certify n={args.n}")
            raise CertificationError(f"{ERROR_CERTIFICATION_FAILED} (n={args.n}, omega={args.omega})")
        value = gbound_service.lower_bound(args.n, args.alpha, args.rho, args.omega)
        result = BoundResult(value=value, omega=args.omega, certificate=certificate)
        method = "fixed_omega"
    else:
        value, omega = gbound_service.optimized_lower_bound(args.n, args.alpha, args.rho)
        certificate = gbound_service.certify(args.n, omega) if omega is not None else None
        result = BoundResult(value=value, omega=omega, certificate=certificate)
        method = "optimized_omega"

    return [OutputRecord(inputs=inputs, result=result, method=method, elapsed_ms=elapsed_ms(started))]
