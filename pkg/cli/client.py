"""
Command-line parser setup.
Subcommands register themselves on the parser returned here.
"""

import argparse
import logging

from config import Config

logger = logging.getLogger(__name__)


class ShiftLabParser(argparse.ArgumentParser):
    """Top-level parser; subcommands are added to self.subparsers."""

    def __init__(self):
        super().__init__(
            prog="shiftlab",
            description="Workbench for beta-shifts, S-gap shifts, coded systems and their factors",
        )
        self.add_argument("--log-level", default=None, help="Override LOG_LEVEL for this run")
        self.subparsers = self.add_subparsers(dest="command", metavar="command",
                                              parser_class=argparse.ArgumentParser)
        self.subparsers.required = True


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every subcommand that writes a report."""
    parser.add_argument("--out", help="Write the report here instead of stdout")
    parser.add_argument("--report", "--format", dest="report_format", choices=Config.REPORT_FORMATS,
                        default=Config.REPORT_FORMAT, help="Report format")
    parser.add_argument("--threads", type=int, default=Config.THREADS, help="Worker threads")
    parser.add_argument("--no-cache", action="store_true", help="Skip the persistent layer cache")
    parser.add_argument("--cache-dir", default=Config.CACHE_DIR, help="Layer cache directory")


def create_parser() -> ShiftLabParser:
    """
    Create the top-level parser.

    Returns:
        Parser without subcommands; argparse usage errors exit with code 2
    """
    return ShiftLabParser()
