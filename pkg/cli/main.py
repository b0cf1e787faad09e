"""
Command-line entry point for ordsel.

This module builds the argument parser from the subcommand modules, applies
environment settings, and dispatches through the error/timing wrapper. Data
goes to stdout; diagnostics go to stderr.
"""

import argparse
import asyncio
import logging
import os
import sys
from typing import List, Optional

# Add project root to Python path for imports when running directly
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cli.commands import COMMANDS
from cli.config import reload_settings, settings
from cli.middleware import run_command
from services.log_service import logger
from utils.errors import ConfigurationError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=settings.app_name, description=settings.app_description)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        reload_settings()
    except ConfigurationError as e:
        print(f"{settings.app_name}: {e}", file=sys.stderr)
        return e.exit_code
    logger.setLevel(getattr(logging, settings.log_level, logging.WARNING))

    args = build_parser().parse_args(argv)
    return asyncio.run(run_command(args.handler, args))


if __name__ == "__main__":
    sys.exit(main())
