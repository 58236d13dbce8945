"""
Exit-code mapping for command handlers.
"""

import functools
from typing import Awaitable, Callable

from reports.report import Report
from utils.errors import BudgetExceeded, ConfigError, ShiftLabError, ValidationError
import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

Handler = Callable[..., Awaitable[int]]


def exit_code_for_report(report: Report) -> int:
    """0 unless some record failed."""
    return EXIT_FAILURE if report.has_failures() else EXIT_OK


def register_events(handler: Handler) -> Handler:
    """
    Wrap a command handler so every error ends in an exit code.

    Args:
        handler: Coroutine taking the parsed arguments and returning an exit code
    """

    @functools.wraps(handler)
    async def guarded(args) -> int:
        try:
            return await handler(args)
        except (ConfigError, ValidationError) as e:
            logger.error(f"Invalid input: {e}")
            return EXIT_CONFIG
        except BudgetExceeded as e:
            logger.error(f"Budget exceeded: {e}")
            return EXIT_BUDGET
        except ShiftLabError as e:
            logger.error(f"Command {args.command} failed: {e}", exc_info=True)
            return EXIT_FAILURE
        except Exception as e:
            logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
            return EXIT_FAILURE

    return guarded
