"""
beta command - digits of w(beta), layer counts and decomposition checks.
"""

import logging

from cli.client import add_output_arguments
from cli.events import register_events
from cli.runner import config_from_args, run
from utils.validation import parse_conditions, sanitize_input

logger = logging.getLogger(__name__)


def register_beta_command(subparsers):
    """Register the beta command."""

    parser = subparsers.add_parser("beta", help="Beta shifts: digits, counts and decomposition checks")
    parser.add_argument("--beta", required=True, help="golden, 1.8, 7/4 or root(x^3-x-1, near=1.3)")
    parser.add_argument("--digits", type=int, default=64, help="Digits of w(beta) to compute")
    parser.add_argument("--enumerate", type=int, default=12, dest="enumerate_depth",
                        help="Longest words enumerated explicitly")
    parser.add_argument("--count", type=int, default=25, dest="count_depth", help="Longest layer counted")
    parser.add_argument("--decompose", action="store_true",
                        help="Also run the parse cover, density and counting-bound checks")
    parser.add_argument("--verify", help="Conditions to check, e.g. I,II,III")
    add_output_arguments(parser)

    async def beta_command(args) -> int:
        """Digits, first-return counts and the requested conditions for one beta."""
        beta = sanitize_input(args.beta)
        checks = ["beta-digits", "lemma-counts", "growth", "axioms"]
        if args.decompose:
            checks += ["parse-cover", "density", "counting-bounds"]
        checks += parse_conditions(args.verify)

        config = config_from_args(
            args, f"beta:{beta}", checks,
            beta_depth=args.digits,
            enumerate_depth=args.enumerate_depth,
            count_depth=args.count_depth,
        )
        _, code = await run(config)
        return code

    parser.set_defaults(handler=register_events(beta_command))
