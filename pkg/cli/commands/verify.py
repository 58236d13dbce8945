"""
verify command - decomposition conditions and specification checks for any system.
"""

import logging

from cli.client import add_output_arguments
from cli.events import register_events
from cli.runner import config_from_args, run
from utils.validation import parse_conditions, parse_name_list

logger = logging.getLogger(__name__)

DEFAULT_CONDITIONS = "I,II,III"


def register_verify_command(subparsers):
    """Register the verify command."""

    parser = subparsers.add_parser("verify", help="Check conditions I, II, III and specification")
    parser.add_argument("--system", required=True, help="System spec, e.g. beta:golden or sgap:1,2")
    parser.add_argument("--conditions", default=None, help=f"Conditions (default {DEFAULT_CONDITIONS})")
    parser.add_argument("--checks", default=None,
                        help="Extra catalog checks, e.g. parse-cover,density,dichotomy")
    parser.add_argument("--depth", type=int, default=25, dest="count_depth", help="Longest layer counted")
    parser.add_argument("--enumerate", type=int, default=12, dest="enumerate_depth",
                        help="Longest words enumerated explicitly")
    parser.add_argument("--n-max", type=int, default=5, dest="spec_n_max",
                        help="Longest G word in a gluing tuple")
    parser.add_argument("--m", type=int, default=3, dest="tuple_size", help="Largest gluing tuple")
    parser.add_argument("--M", type=int, default=3, dest="M", help="Boundary bound for G(M)")
    parser.add_argument("--tau-max", type=int, default=6, help="Longest extension tried")
    parser.add_argument("--extension-depth", type=int, default=8,
                        help="Longest G(M) word extended by the condition III search")
    add_output_arguments(parser)

    async def verify_command(args) -> int:
        """Run the requested conditions and extra checks on one system."""
        conditions = parse_conditions(args.conditions or DEFAULT_CONDITIONS)
        checks = conditions + [name for name in parse_name_list(args.checks) if name not in conditions]
        config = config_from_args(
            args, args.system, checks,
            count_depth=args.count_depth,
            enumerate_depth=args.enumerate_depth,
            spec_n_max=args.spec_n_max,
            tuple_size=args.tuple_size,
            M=args.M,
            tau_max=args.tau_max,
            extension_depth=args.extension_depth,
        )
        _, code = await run(config)
        return code

    parser.set_defaults(handler=register_events(verify_command))
