"""
Command wrappers for the ordsel CLI.

This module provides error handling and timing around command dispatch:
ordsel errors become their exit codes, stray ValueErrors are usage errors,
and anything else is logged with a traceback.
"""

import asyncio
import sys
import time
from typing import Callable, List

from models import OutputRecord
from services.log_service import logger
from utils.errors import OrdselError

from .output import render


async def _invoke(command: Callable, args) -> List[OutputRecord]:
    """Run a command; synchronous commands go to a worker thread."""
    start_time = time.perf_counter()
    logger.info(f"Running command: {args.command}")
    try:
        if asyncio.iscoroutinefunction(command):
            records = await command(args)
        else:
            records = await asyncio.to_thread(command, args)
        logger.info(f"Command completed: {args.command} - {len(records)} record(s) - Time: {time.perf_counter() - start_time:.3f}s")
        return records
    except Exception as e:
        logger.info(f"Command failed: {args.command} - Error: {e} - Time: {time.perf_counter() - start_time:.3f}s")
        raise


async def run_command(command: Callable, args) -> int:
    """Dispatch a command, print its records on stdout and return the exit code."""
    try:
        records = await _invoke(command, args)
    except OrdselError as e:
        print(f"ordsel: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"ordsel: {e}", file=sys.stderr)
        return 2
    except Exception:
        logger.exception(f"Unexpected error running command: {args.command}")
        return 1

    for line in render(records, getattr(args, "format", None)):
        print(line)
    return 0
