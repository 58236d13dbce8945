"""
sgap command - entropy and checks for S-gap shifts.
"""

import logging

from cli.client import add_output_arguments
from cli.events import register_events
from cli.runner import config_from_args, run
from systems.sgap import BOUNDED, LITERAL
from utils.errors import ValidationError
from utils.validation import parse_conditions, parse_int_list, parse_tolerance, sanitize_input

logger = logging.getLogger(__name__)


def sgap_spec(set_text=None, rule=None, max_gap=64, bounded=False) -> str:
    """System spec string from the sgap flags."""
    if bool(set_text) == bool(rule):
        raise ValidationError("Give exactly one of --set and --rule")
    if set_text:
        body = ",".join(str(n) for n in parse_int_list(set_text))
    else:
        body = f"{sanitize_input(rule)}@{max_gap}"
    return f"sgap:{body}" + (f";{BOUNDED}" if bounded else "")


def register_sgap_command(subparsers):
    """Register the sgap command."""

    parser = subparsers.add_parser("sgap", help="S-gap shifts: entropy root, counts and checks")
    parser.add_argument("--set", dest="set_text", help="Finite S, e.g. 1,2")
    parser.add_argument("--rule", help="Infinite S: all, pow2, odd, even")
    parser.add_argument("--max", type=int, default=64, dest="max_gap", help="Truncation for --rule")
    parser.add_argument("--bounded", action="store_true",
                        help=f"Use the {BOUNDED} boundary policy instead of {LITERAL}")
    parser.add_argument("--entropy", action="store_true", help="Solve for lambda and print it")
    parser.add_argument("--tol", default="1e-10", help="Root tolerance")
    parser.add_argument("--count", type=int, default=25, dest="count_depth", help="Longest layer counted")
    parser.add_argument("--verify", help="Conditions to check, e.g. I,II,III")
    parser.add_argument("--min-gap", nargs=2, metavar=("U", "W"), help="Shortest connector from U to W")
    add_output_arguments(parser)

    async def sgap_command(args) -> int:
        """Entropy, growth and the requested conditions for one S-gap shift."""
        spec = sgap_spec(args.set_text, args.rule, args.max_gap, args.bounded)
        tolerance = parse_tolerance(args.tol)

        checks = ["growth"]
        options = {}
        if args.entropy:
            checks.insert(0, "sgap-entropy")
        if args.min_gap:
            checks.append("min-gap")
            options = {"u": args.min_gap[0], "w": args.min_gap[1]}
        checks += parse_conditions(args.verify)

        config = config_from_args(args, spec, checks, tolerance=tolerance,
                                  count_depth=args.count_depth, options=options)
        report, code = await run(config)
        for record in report.records:
            if record.name == "sgap-entropy":
                logger.info(f"lambda = {record.values['lambda']} (residual {record.values['residual']:.3e})")
        return code

    parser.set_defaults(handler=register_events(sgap_command))
