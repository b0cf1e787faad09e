"""
Subcommands for the ordsel CLI.

This package provides one module per subcommand:
- psuccess: success probability by quadrature, brute force, Monte Carlo or closed form
- bound: Gaussian-copula lower bound at a given or optimized omega
- invert: certified sample size for a target success probability
- table: grid of inversions over rho and delta
- sweep: bound against quadrature as n, rho or alpha varies
- limits: large-n limits of fixed-size and randomized-threshold selection
"""

import argparse
from typing import List

from models import CopulaFamily

FORMATS = ("json", "csv", "markdown")


def add_format_argument(parser: argparse.ArgumentParser, default: str = "json") -> None:
    parser.add_argument("--format", choices=FORMATS, default=default, help=f"Output format (default: {default})")


def add_copula_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--copula", required=True, choices=[f.value for f in CopulaFamily], help="Copula family")
    parser.add_argument("--param", type=float, default=None, help="Dependence parameter (omit for independence/comonotonic)")


def float_list(raw: str) -> List[float]:
    """argparse type for comma-separated floats."""
    try:
        values = [float(item) for item in raw.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {raw!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


from . import bound, invert, limits, psuccess, sweep, table  # noqa: E402

COMMANDS = (psuccess, bound, invert, table, sweep, limits)

__all__ = ["COMMANDS", "add_copula_arguments", "add_format_argument", "float_list"]
