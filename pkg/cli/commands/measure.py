"""
measure command - empirical measures, Per(n) growth, Gibbs ratios and the Parry measure.
"""

import logging

from cli.client import add_output_arguments
from cli.events import register_events
from cli.runner import config_from_args, run

logger = logging.getLogger(__name__)


def register_measure_command(subparsers):
    """Register the measure command."""

    parser = subparsers.add_parser("measure", help="Measures of maximal entropy")
    parser.add_argument("--system", required=True, help="System spec, e.g. beta:golden")
    parser.add_argument("--mme-depth", type=int, default=24, help="Depth m of the word-average measure")
    parser.add_argument("--per", type=int, default=None, dest="periodic_depth",
                        help="Period bound n for Per(n)")
    parser.add_argument("--targets-len", type=int, default=3, help="Longest cylinder estimated")
    parser.add_argument("--gibbs", action="store_true", help="Report Gibbs ratios")
    parser.add_argument("--gibbs-n-max", type=int, default=8, help="Longest word in the Gibbs ratios")
    parser.add_argument("--M", type=int, default=3, dest="M", help="Boundary bound for the G(M) ratios")
    parser.add_argument("--parry", action="store_true", help="Compute the Parry measure")
    add_output_arguments(parser)

    async def measure_command(args) -> int:
        """Word-average measure plus the optional periodic, Gibbs and Parry checks."""
        checks = ["mme"]
        if args.periodic_depth:
            checks.append("periodic")
        if args.gibbs:
            checks.append("gibbs")
        if args.parry:
            checks.append("parry")

        settings = {
            "mme_depth": args.mme_depth,
            "targets_len": args.targets_len,
            "gibbs_n_max": args.gibbs_n_max,
            "M": args.M,
        }
        if args.periodic_depth:
            settings["periodic_depth"] = args.periodic_depth
        config = config_from_args(args, args.system, checks, **settings)
        _, code = await run(config)
        return code

    parser.set_defaults(handler=register_events(measure_command))
