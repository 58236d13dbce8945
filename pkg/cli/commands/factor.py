"""
factor command - block-code images and the transported decomposition.
"""

import logging

from cli.client import add_output_arguments
from cli.events import register_events
from cli.runner import config_from_args, run
from utils.validation import sanitize_input

logger = logging.getLogger(__name__)


def register_factor_command(subparsers):
    """Register the factor command."""

    parser = subparsers.add_parser("factor", help="Factors of a system under a block code")
    parser.add_argument("--system", required=True, help="Source system spec, e.g. beta:golden")
    parser.add_argument("--code", required=True, help="Block code JSON file")
    parser.add_argument("--verify", action="store_true",
                        help="Also check specification and condition III on the factor")
    parser.add_argument("--depth", type=int, default=8, help="Depth of the factor checks")
    add_output_arguments(parser)

    async def factor_command(args) -> int:
        """Homomorphism identities and the entropy gap, optionally the transported conditions."""
        checks = ["homomorphism", "factor-gap"]
        if args.verify:
            checks += ["S", "factor-III"]
        spec = f"factor:{sanitize_input(args.code)}@{sanitize_input(args.system)}"
        config = config_from_args(
            args, spec, checks,
            enumerate_depth=args.depth,
            extension_depth=args.depth,
        )
        _, code = await run(config)
        return code

    parser.set_defaults(handler=register_events(factor_command))
