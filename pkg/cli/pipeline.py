"""
Catalog of named checks.

Every entry takes the built system and the run settings and returns check
records. Subcommands pick entries by name; conditions I, II, III and the
specification modes S, W, Per use their usual short names.
"""

from typing import TYPE_CHECKING, Callable, Dict, List, Optional

from config import Config
from decomposition.checks import (
    check_condition_I,
    check_condition_II,
    check_condition_III,
    check_counting_bounds,
    check_density,
    check_parse_cover,
    check_specification,
    dichotomy_diagnostic,
)
from factor.code import homomorphism_check
from factor.transport import factor_condition_III, factor_entropy_gap
from language.engine import check_language_axioms, count_layers, enumerate_words, growth_estimate
from language.oracle import Automaton
from measures.empirical import compatibility_defect, empirical_mme, measure_entropy
from measures.gibbs import gibbs_report
from measures.parry import parry_measure
from measures.periodic import entropy_from_periodic, periodic_measure, periodic_points
from reports.report import CheckRecord, EVIDENCE, FAIL, INCONCLUSIVE, PASS
from systems.beta import beta_g_count, beta_lemma_counts, expansion_value, shift_dominance_violations, specification_flag
from systems.coded import cn_growth_report
from systems.registry import System
from systems.sgap import min_gap, sgap_decomposition, sgap_entropy, sgap_oracle, two_sided
from utils.errors import ValidationError
from words.word import Word, format_word, parse_word
import logging

if TYPE_CHECKING:
    from cli.runner import RunConfig

logger = logging.getLogger(__name__)

# slack on the beta-expansion value bounds
VALUE_SLACK = 1e-12
# entropy agreement between the Parry eigenvalue and the closed form
PARRY_AGREEMENT = 1e-6
# longest words paired by the splitting-identity check
HOMOMORPHISM_DEPTH = 6

CheckFn = Callable[[System, "RunConfig"], List[CheckRecord]]


def _require_kind(system: System, check: str, *kinds: str) -> None:
    if system.kind not in kinds:
        raise ValidationError(f"Check {check} applies to {' or '.join(kinds)} systems, not {system.kind}")


def _entropy(system: System, check: str) -> float:
    if system.exact_entropy is None:
        raise ValidationError(f"Check {check} needs the entropy of {system.label}, which is not known exactly")
    return system.exact_entropy


def _finite(system: System, check: str) -> Automaton:
    if system.finite_automaton is None:
        raise ValidationError(f"Check {check} needs a finite presentation of {system.label}")
    return system.finite_automaton


def _counting_depth(system: System, config: "RunConfig") -> int:
    """Counts run by DP when G has an automaton; otherwise they enumerate and stay shallow."""
    if system.decomposition.g_automaton is not None:
        return config.count_depth
    return min(config.count_depth, config.enumerate_depth)


def _targets(system: System, length: int) -> List[Word]:
    return [w for n in range(1, length + 1) for w in enumerate_words(system.language, n)]


def growth(system: System, config: "RunConfig") -> List[CheckRecord]:
    counts = count_layers(system.language, config.count_depth)
    estimate = growth_estimate(counts)
    values = estimate.as_values()
    notes = []
    verdict = INCONCLUSIVE
    if system.exact_entropy is None:
        notes.append("entropy not known in closed form")
    else:
        deviation = estimate.limsup_proxy - system.exact_entropy
        values["exact_entropy"] = system.exact_entropy
        values["deviation"] = deviation
        if abs(deviation) <= config.rate_tolerance:
            verdict = EVIDENCE
    return [CheckRecord(name="growth", depth=config.count_depth, values=values, verdict=verdict, notes=notes)]


def axioms(system: System, config: "RunConfig") -> List[CheckRecord]:
    return [check_language_axioms(system.language, config.enumerate_depth)]


def condition_I(system: System, config: "RunConfig") -> List[CheckRecord]:
    return [check_condition_I(system.decomposition, system.language, config.spec_n_max,
                              config.tuple_size, workers=config.threads)]


def condition_II(system: System, config: "RunConfig") -> List[CheckRecord]:
    return [check_condition_II(system.decomposition, system.language, _counting_depth(system, config))]


def condition_III(system: System, config: "RunConfig") -> List[CheckRecord]:
    return [check_condition_III(system.decomposition, system.language, config.M, config.tau_max,
                                config.extension_depth)]


def _specification(mode: str) -> CheckFn:
    def check(system: System, config: "RunConfig") -> List[CheckRecord]:
        return [check_specification(system.decomposition, system.language, config.spec_n_max,
                                    config.tuple_size, mode=mode, workers=config.threads)]
    return check


def parse_cover(system: System, config: "RunConfig") -> List[CheckRecord]:
    return [check_parse_cover(system.decomposition, system.language, config.enumerate_depth)]


def density(system: System, config: "RunConfig") -> List[CheckRecord]:
    return [check_density(system.decomposition, system.language, config.enumerate_depth,
                          config.delta, config.M_max)]


def counting_bounds(system: System, config: "RunConfig") -> List[CheckRecord]:
    h = _entropy(system, "counting-bounds")
    return [check_counting_bounds(system.decomposition, system.language, _counting_depth(system, config), h)]


def dichotomy(system: System, config: "RunConfig") -> List[CheckRecord]:
    """Dichotomy on the two-sided language; literal boundary runs would add words no orbit contains."""
    language, d = system.language, system.decomposition
    notes = []
    if system.kind == "sgap" and two_sided(system.source) is not system.source:
        shift = two_sided(system.source)
        language, d = sgap_oracle(shift), sgap_decomposition(shift)
        notes.append(f"run on {shift.label}, the subword closure of the bi-infinite rule")
    record = dichotomy_diagnostic(language, d, config.enumerate_depth)
    record.notes.extend(notes)
    return [record]


def periodic(system: System, config: "RunConfig") -> List[CheckRecord]:
    """Per(n) growth; with a finite presentation also the distance of the Per(n) measure from Parry."""
    ps = periodic_points(system.language, config.periodic_depth, presentation=system.finite_automaton)
    record = entropy_from_periodic(ps, system.exact_entropy, tolerance=config.rate_tolerance)
    if system.finite_automaton is not None and ps.total:
        targets = _targets(system, config.targets_len)
        parry = parry_measure(system.finite_automaton)
        measure = periodic_measure(ps, targets)
        record.values["parry_deviation"] = max(abs(measure(w) - parry(w)) for w in targets)
    return [record]


def mme(system: System, config: "RunConfig") -> List[CheckRecord]:
    """Word-average measure on the cylinders up to targets_len."""
    targets = _targets(system, config.targets_len)
    mu = empirical_mme(system.language, config.mme_depth, targets, system.finite_automaton,
                       workers=config.threads)
    values: Dict[str, object] = {
        "cylinders": {format_word(w): mu(w) for w in targets},
        "entropy_estimate": measure_entropy(mu, config.targets_len),
    }
    if config.targets_len >= 2:
        values["compatibility_defect"] = compatibility_defect(mu, config.targets_len - 1)
    if system.finite_automaton is not None:
        parry = parry_measure(system.finite_automaton)
        values["parry_deviation"] = max(abs(mu(w) - parry(w)) for w in targets)
    notes = ["in-window offsets only; out-of-window bias depends on the choice of one point per cylinder"]
    return [CheckRecord(name="mme", depth=config.mme_depth, values=values, verdict=EVIDENCE, notes=notes)]


def gibbs(system: System, config: "RunConfig") -> List[CheckRecord]:
    h = _entropy(system, "gibbs")
    report = gibbs_report(system.language, system.decomposition, h, config.gibbs_n_max, config.mme_depth,
                          M=config.M, presentation=system.finite_automaton)
    return [report.to_record()]


def parry(system: System, config: "RunConfig") -> List[CheckRecord]:
    measure = parry_measure(_finite(system, "parry"))
    targets = _targets(system, config.targets_len)
    values: Dict[str, object] = {
        "lambda": measure.lam,
        "entropy": measure.entropy,
        "residual": measure.residual,
        "cylinders": {format_word(w): measure(w) for w in targets},
    }
    verdict = EVIDENCE
    if system.exact_entropy is not None:
        values["exact_entropy"] = system.exact_entropy
        agree = abs(measure.entropy - system.exact_entropy) <= PARRY_AGREEMENT
        verdict = PASS if agree else FAIL
    return [CheckRecord(name="parry", depth=config.targets_len, values=values, verdict=verdict)]


def cn_growth(system: System, config: "RunConfig") -> List[CheckRecord]:
    _require_kind(system, "cn-growth", "coded", "orbit")
    return [cn_growth_report(system.source, config.count_depth, system.language)]


def beta_digits(system: System, config: "RunConfig") -> List[CheckRecord]:
    """w(beta) lies in [1 - 2 beta^-N, 1] and dominates its shifts."""
    _require_kind(system, "beta-digits", "beta")
    shift = system.source
    N = shift.depth
    value = expansion_value(shift.beta, shift.digits, Config.BETA_PRECISION_BITS)
    lower = 1 - 2 * float(shift.beta) ** -N
    violations = shift_dominance_violations(shift.digits)
    in_range = lower - VALUE_SLACK <= value <= 1 + VALUE_SLACK
    return [CheckRecord(
        name="beta-digits",
        depth=N,
        values={
            "beta": shift.beta.spec,
            "digits": format_word(shift.digits),
            "periodic_tail": list(shift.periodic_tail) if shift.periodic_tail else None,
            "greedy_finite": shift.greedy_finite,
            "value": value,
            "lower_bound": lower,
            "dominance_violations": violations,
            "specification": specification_flag(shift),
        },
        verdict=PASS if in_range and not violations else FAIL,
    )]


def lemma_counts(system: System, config: "RunConfig") -> List[CheckRecord]:
    """First-return recursion for #G_n and #L_n against automaton counts."""
    _require_kind(system, "lemma-counts", "beta")
    shift = system.source
    N = config.count_depth
    g, totals = beta_lemma_counts(shift, N)
    counts = count_layers(system.language, N)
    g_dp = [beta_g_count(shift, n) for n in range(N + 1)]
    agree = totals[1:] == counts and g == g_dp
    return [CheckRecord(
        name="lemma-counts",
        depth=N,
        values={"g": g, "language": totals, "language_dp": counts, "g_dp": g_dp},
        verdict=PASS if agree else FAIL,
    )]


def sgap_lambda(system: System, config: "RunConfig") -> List[CheckRecord]:
    _require_kind(system, "sgap-entropy", "sgap")
    result = sgap_entropy(system.source, tol=config.tolerance)
    return [CheckRecord(
        name="sgap-entropy",
        depth=result.truncation,
        values={
            "lambda": f"{result.lam:.12g}",
            "log_lambda": result.log_lambda,
            "residual": result.residual,
            "iterations": result.iterations,
        },
        verdict=PASS if result.residual < config.tolerance else FAIL,
    )]


def gap(system: System, config: "RunConfig") -> List[CheckRecord]:
    """Shortest connector between options u and w."""
    try:
        u = parse_word(str(config.options["u"]), system.language.alphabet)
        w = parse_word(str(config.options["w"]), system.language.alphabet)
    except KeyError as e:
        raise ValidationError(f"Check min-gap needs option {e}")
    t_max = int(config.options.get("t_max", config.enumerate_depth))
    result = min_gap(system.language, u, w, t_max)
    return [CheckRecord(
        name="min-gap",
        depth=t_max,
        values={"u": format_word(u), "w": format_word(w), "t": result.t,
                "connector": format_word(result.word) if result.word is not None else None},
        verdict=PASS if result.found else INCONCLUSIVE,
    )]


def homomorphism(system: System, config: "RunConfig") -> List[CheckRecord]:
    """Splitting identities on every admissible pair v, w with 2k <= |v|, |w| <= max(6, 2k+1)."""
    _require_kind(system, "homomorphism", "factor")
    code = system.source
    base = system.base.language
    lengths = list(range(max(1, 2 * code.k), max(HOMOMORPHISM_DEPTH, 2 * code.k + 1) + 1))
    words = [v for n in lengths for v in enumerate_words(base, n)]
    checked = 0
    failures = []
    for v in words:
        for w in words:
            if not base.contains(v + w):
                continue
            checked += 1
            if not homomorphism_check(code, v, w):
                failures.append([format_word(v), format_word(w)])
    return [CheckRecord(
        name="homomorphism",
        depth=lengths[-1],
        values={"pairs": checked, "failures": failures[:10]},
        verdict=PASS if not failures else FAIL,
    )]


def factor_gap(system: System, config: "RunConfig") -> List[CheckRecord]:
    _require_kind(system, "factor-gap", "factor")
    base = system.base
    return [factor_entropy_gap(system.source, base.decomposition, base.language,
                               config.enumerate_depth, system.factor)]


def factor_III(system: System, config: "RunConfig") -> List[CheckRecord]:
    _require_kind(system, "factor-III", "factor")
    base = system.base
    return [factor_condition_III(system.source, base.decomposition, base.language, config.M,
                                 config.tau_max, config.extension_depth, system.factor)]


CHECKS: Dict[str, CheckFn] = {
    "axioms": axioms,
    "growth": growth,
    "I": condition_I,
    "II": condition_II,
    "III": condition_III,
    "S": _specification("S"),
    "W": _specification("W"),
    "Per": _specification("Per"),
    "parse-cover": parse_cover,
    "density": density,
    "counting-bounds": counting_bounds,
    "dichotomy": dichotomy,
    "periodic": periodic,
    "mme": mme,
    "gibbs": gibbs,
    "parry": parry,
    "cn-growth": cn_growth,
    "beta-digits": beta_digits,
    "lemma-counts": lemma_counts,
    "sgap-entropy": sgap_lambda,
    "min-gap": gap,
    "homomorphism": homomorphism,
    "factor-gap": factor_gap,
    "factor-III": factor_III,
}


def run_named_check(name: str, system: System, config: "RunConfig") -> List[CheckRecord]:
    """
    Run one catalog entry.

    Raises:
        ValidationError: If the name is unknown or the check does not apply
    """
    check: Optional[CheckFn] = CHECKS.get(name)
    if check is None:
        raise ValidationError(f"Unknown check {name!r}; available: {', '.join(CHECKS)}")
    logger.debug(f"Running {name} on {system.label}")
    return check(system, config)
