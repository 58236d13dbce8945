"""
Main entry point for the shiftlab command line.
"""

import asyncio
import logging
import sys

from config import Config
from cli.client import create_parser
from cli.commands.beta import register_beta_command
from cli.commands.sgap import register_sgap_command
from cli.commands.coded import register_coded_command
from cli.commands.verify import register_verify_command
from cli.commands.measure import register_measure_command
from cli.commands.factor import register_factor_command
from cli.commands.reproduce import register_reproduce_command
from cli.commands.cache import register_cache_command

logger = logging.getLogger(__name__)


def build_parser():
    """Parser with every subcommand registered."""
    parser = create_parser()

    register_beta_command(parser.subparsers)
    register_sgap_command(parser.subparsers)
    register_coded_command(parser.subparsers)
    register_verify_command(parser.subparsers)
    register_measure_command(parser.subparsers)
    register_factor_command(parser.subparsers)
    register_reproduce_command(parser.subparsers)
    register_cache_command(parser.subparsers)

    return parser


async def main(argv=None) -> int:
    """Main application entry point."""

    args = build_parser().parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(getattr(logging, args.log_level.upper(), logging.INFO))

    logger.debug(f"Running {args.command} (log level {Config.LOG_LEVEL})")
    return await args.handler(args)


if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        sys.exit(130)
