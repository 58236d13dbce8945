"""
coded command - generator files, c_n growth and decomposition checks.
"""

import logging

from cli.client import add_output_arguments
from cli.events import register_events
from cli.runner import config_from_args, run
from utils.validation import parse_conditions, sanitize_input

logger = logging.getLogger(__name__)


def register_coded_command(subparsers):
    """Register the coded command."""

    parser = subparsers.add_parser("coded", help="Coded systems from a generator file")
    parser.add_argument("--generators", required=True,
                        help="Generator file (one word per line) or an inline list such as 0,100")
    parser.add_argument("--cn", type=int, default=30, dest="count_depth", help="Depth of the c_n comparison")
    parser.add_argument("--enumerate", type=int, default=12, dest="enumerate_depth",
                        help="Longest words enumerated explicitly")
    parser.add_argument("--verify", help="Conditions to check, e.g. I,II,III")
    add_output_arguments(parser)

    async def coded_command(args) -> int:
        """c_n growth against the language growth, plus the requested conditions."""
        generators = sanitize_input(args.generators)
        checks = ["cn-growth", "axioms", "dichotomy"] + parse_conditions(args.verify)
        config = config_from_args(
            args, f"coded:{generators}", checks,
            count_depth=args.count_depth,
            enumerate_depth=args.enumerate_depth,
        )
        _, code = await run(config)
        return code

    parser.set_defaults(handler=register_events(coded_command))
