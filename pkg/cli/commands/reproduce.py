"""
reproduce command - pinned example runs, one report per script.

Each script is a list of steps; a step names (or builds) a system and the
checks to run on it. All records of a script land in one report, each
tagged with the label of the system it was computed on.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from cli.client import add_output_arguments
from cli.events import EXIT_FAILURE, EXIT_OK, register_events
from cli.pipeline import CHECKS
from cli.runner import Check, RunConfig, emit_report, run
from factor.code import BlockCode
from language.engine import count_layers, enumerate_words
from measures.parry import parry_measure
from measures.periodic import periodic_measure, periodic_points
from reports.report import CheckRecord, EVIDENCE, FAIL, INCONCLUSIVE, PASS, Report
from systems.beta import beta_contains, beta_generators, build_beta_shift
from systems.coded import build_generator_set
from systems.registry import System, build_system, coded_system, factor_system
from systems.sgap import min_gap
from utils.errors import ValidationError
from utils.fingerprint import compute_fingerprint
from words.word import format_word
import logging

logger = logging.getLogger(__name__)

FIBONACCI_DEPTH = 25
BRUTE_FORCE_DEPTH = 12
PERIOD_CHECKPOINTS = (8, 12, 16, 20)
GAP_LEVELS = (2, 3, 4)
CODED_TRUNCATION = 12
CODED_AGREEMENT_DEPTH = 10


@dataclass
class Step:
    """One system of a script with the checks run on it."""

    spec: str
    checks: List[Tuple[str, Check]]
    settings: Dict[str, object] = field(default_factory=dict)
    build: Optional[Callable[[], System]] = None


def _catalog(*names: str) -> List[Tuple[str, Check]]:
    return [(name, CHECKS[name]) for name in names]


def _fibonacci_counts(system: System, config: RunConfig) -> List[CheckRecord]:
    """#L_n = F_{n+2}, by DP to depth 25 and by brute force to depth 12."""
    fibonacci = [2, 3]
    while len(fibonacci) < FIBONACCI_DEPTH:
        fibonacci.append(fibonacci[-1] + fibonacci[-2])
    counts = count_layers(system.language, FIBONACCI_DEPTH)
    brute = [len(enumerate_words(system.language, n)) for n in range(1, BRUTE_FORCE_DEPTH + 1)]
    agree = counts == fibonacci and brute == counts[:BRUTE_FORCE_DEPTH]
    return [CheckRecord(
        name="fibonacci-counts",
        depth=FIBONACCI_DEPTH,
        values={"counts": counts, "fibonacci": fibonacci, "brute_force": brute},
        verdict=PASS if agree else FAIL,
    )]


def _periodic_convergence(system: System, config: RunConfig) -> List[CheckRecord]:
    """Distance of the Per(n) measure from the Parry measure on short cylinders."""
    parry = parry_measure(system.finite_automaton)
    targets = [w for n in range(1, config.targets_len + 1) for w in enumerate_words(system.language, n)]
    deviations = {}
    for n in PERIOD_CHECKPOINTS:
        measure = periodic_measure(periodic_points(system.language, n, presentation=system.finite_automaton), targets)
        deviations[str(n)] = max(abs(measure(w) - parry(w)) for w in targets)
    series = [deviations[str(n)] for n in PERIOD_CHECKPOINTS]
    decreasing = all(b < a for a, b in zip(series, series[1:]))
    return [CheckRecord(
        name="periodic-convergence",
        depth=PERIOD_CHECKPOINTS[-1],
        values={"deviations": deviations, "parry": {format_word(w): parry(w) for w in targets}},
        verdict=EVIDENCE if decreasing else INCONCLUSIVE,
    )]


def _gap_growth(system: System, config: RunConfig) -> List[CheckRecord]:
    """Shortest connector from 1 0^(2^(n-1)+1) to 1 for S = powers of 2."""
    gaps = {}
    for n in GAP_LEVELS:
        u = (1,) + (0,) * (2 ** (n - 1) + 1)
        result = min_gap(system.language, u, (1,), 2 ** n)
        gaps[str(n)] = result.t
    series = [gaps[str(n)] for n in GAP_LEVELS]
    growing = None not in series and all(b > a for a, b in zip(series, series[1:]))
    return [CheckRecord(
        name="min-gap-growth",
        depth=2 ** GAP_LEVELS[-1],
        values={"t": gaps},
        verdict=PASS if growing else FAIL,
        notes=["connector length grows without bound, so no finite specification gap exists"] if growing else [],
    )]


def _coded_agreement(reference: System) -> Check:
    def check(system: System, config: RunConfig) -> List[CheckRecord]:
        """The coded presentation and the beta shift agree on every short word."""
        shift = reference.source
        mismatches = []
        checked = 0
        for n in range(1, CODED_AGREEMENT_DEPTH + 1):
            for w in enumerate_words(reference.language, n):
                checked += 1
                if not system.language.contains(w):
                    mismatches.append(format_word(w))
            # every coded word must also be admissible for the beta shift
            for w in enumerate_words(system.language, n):
                if not beta_contains(shift, w):
                    mismatches.append(format_word(w))
        return [CheckRecord(
            name="coded-agreement",
            depth=CODED_AGREEMENT_DEPTH,
            values={"words": checked, "mismatches": mismatches[:10]},
            verdict=PASS if not mismatches else FAIL,
        )]
    return check


def _golden_factor() -> System:
    """Golden beta shift under the sliding code x -> x_{i-1} + x_{i+1} mod 2."""
    base = build_system("beta:golden")
    code = BlockCode.from_function(base.language, 1, lambda w: (w[0] + w[2]) % 2, 2)
    return factor_system(code, base, "factor:(x[-1]+x[1]) mod 2@beta:golden")


def _golden_coded() -> System:
    shift = build_beta_shift("golden")
    gen = build_generator_set(beta_generators(shift, CODED_TRUNCATION), 2,
                              truncated=True, truncation=CODED_TRUNCATION)
    return coded_system(gen, f"coded:beta-golden-loops@{CODED_TRUNCATION}")


def fibonacci_counts() -> List[Step]:
    return [Step("beta:golden", [("fibonacci-counts", _fibonacci_counts)]),
            Step("golden-sft", [("fibonacci-counts", _fibonacci_counts)])]


def beta_digits() -> List[Step]:
    return [Step(f"beta:{beta}", _catalog("beta-digits", "lemma-counts")) for beta in ("2", "golden", "1.8")]


def sgap_entropy() -> List[Step]:
    return [Step(spec, _catalog("sgap-entropy", "growth"), {"tolerance": 1e-10})
            for spec in ("sgap:1,2", "sgap:0,1", "sgap:all@64")]


def decomposition_golden() -> List[Step]:
    return [Step("beta:golden", _catalog("I", "parse-cover", "III", "II", "dichotomy"),
                 {"spec_n_max": 6, "extension_depth": 10})]


def decomposition_sgap() -> List[Step]:
    return [Step("sgap:1,2;bounded", _catalog("I", "parse-cover", "III", "II"),
                 {"spec_n_max": 6, "extension_depth": 10})]


def lemma_bounds() -> List[Step]:
    settings = {"enumerate_depth": 16, "delta": 0.1, "M_max": 6}
    return [Step("beta:golden", _catalog("counting-bounds", "density", "lemma-counts"), settings),
            Step("sgap:1,2;bounded", _catalog("counting-bounds", "density"), settings)]


def gibbs_golden() -> List[Step]:
    return [Step("beta:golden", _catalog("gibbs", "mme", "parry"),
                 {"mme_depth": 24, "gibbs_n_max": 8, "targets_len": 3})]


def periodic_golden() -> List[Step]:
    return [Step("beta:golden", _catalog("periodic") + [("periodic-convergence", _periodic_convergence)],
                 {"periodic_depth": 20, "targets_len": 3})]


def factor_golden() -> List[Step]:
    return [Step("factor:golden", _catalog("homomorphism", "factor-gap", "S", "factor-III"),
                 {"enumerate_depth": 10}, build=_golden_factor)]


def sgap_min_gap() -> List[Step]:
    return [Step("sgap:pow2@64", [("min-gap-growth", _gap_growth)])]


def coded_golden() -> List[Step]:
    reference = build_system("beta:golden")
    return [Step("coded:golden", [("coded-agreement", _coded_agreement(reference))] + _catalog("cn-growth"),
                 {"count_depth": 30}, build=_golden_coded)]


SCRIPTS: Dict[str, Callable[[], List[Step]]] = {
    "fibonacci-counts": fibonacci_counts,
    "beta-digits": beta_digits,
    "sgap-entropy": sgap_entropy,
    "decomposition-golden": decomposition_golden,
    "decomposition-sgap": decomposition_sgap,
    "lemma-bounds": lemma_bounds,
    "gibbs-golden": gibbs_golden,
    "periodic-golden": periodic_golden,
    "factor-golden": factor_golden,
    "sgap-min-gap": sgap_min_gap,
    "coded-golden": coded_golden,
}


async def reproduce(script_id: str, base: RunConfig) -> List[Report]:
    """
    Run one script (or all of them) and return one report per script.

    Args:
        script_id: A key of SCRIPTS, or "all"
        base: Output, cache and thread settings shared by every step

    Raises:
        ValidationError: For an unknown script id
    """
    if script_id == "all":
        ids = list(SCRIPTS)
    elif script_id in SCRIPTS:
        ids = [script_id]
    else:
        raise ValidationError(f"Unknown script {script_id!r}; expected one of {', '.join(SCRIPTS)}, all")

    reports = []
    for name in ids:
        report = Report(compute_fingerprint({"script": name}), name, {"script": name})
        for step in SCRIPTS[name]():
            config = RunConfig(system=step.spec, report_format=base.report_format, cache_dir=base.cache_dir,
                               use_cache=base.use_cache, threads=base.threads, **step.settings)
            system = step.build() if step.build else None
            sub, _ = await run(config, step.checks, system=system, emit=False)
            for record in sub.records:
                record.values = {"system": sub.system_label, **record.values}
                report.add(record)
        logger.info(f"Script {name}: {report.summary()}")
        reports.append(report)
    return reports


def register_reproduce_command(subparsers):
    """Register the reproduce command."""

    parser = subparsers.add_parser("reproduce", help="Run a pinned example script")
    parser.add_argument("script", choices=list(SCRIPTS) + ["all"])
    add_output_arguments(parser)

    async def reproduce_command(args) -> int:
        """Write <out>/<script>.<format> for each script, or print when --out is absent."""
        base = RunConfig(system="", report_format=args.report_format, cache_dir=args.cache_dir,
                         use_cache=not args.no_cache, threads=args.threads)
        reports = await reproduce(args.script, base)
        for report in reports:
            out = str(Path(args.out) / f"{report.system_label}.{args.report_format}") if args.out else None
            emit_report(report, RunConfig(system="", report_format=args.report_format, out=out))
        return EXIT_FAILURE if any(report.has_failures() for report in reports) else EXIT_OK

    parser.set_defaults(handler=register_events(reproduce_command))
