"""
Evidence checkers for a decomposition L = C^p G C^s.

Each checker returns a CheckRecord. Statements that are finite at the
tested depth (a gluing search, a parse cover, an extension search) get
pass/fail verdicts; asymptotic statements about growth rates only ever get
evidence or inconclusive.
"""

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Set, Tuple

from config import Config
from decomposition.core import Decomposition, GMFilter, boundary_count, count_g, g_words, min_boundary
from language.engine import count_layers, enumerate_words, growth_estimate
from language.oracle import LanguageOracle
from reports.report import CheckRecord, EVIDENCE, FAIL, INCONCLUSIVE, PASS
from utils.errors import ValidationError
from words.algebra import concat_set
from words.word import Word, format_word, is_primitive, rotations
from words.rules import validate_nonnegative, validate_positive
import logging

logger = logging.getLogger(__name__)

SPEC_MODES = ("S", "W", "Per")

# slack for comparing log counts with n * h
LOG_SLACK = 1e-9


def _connecting_words(language: LanguageOracle, t: int, mode: str) -> List[Word]:
    if mode == "W":
        return [v for n in range(t + 1) for v in enumerate_words(language, n)]
    return enumerate_words(language, t)


class _TupleSearch:
    """Depth-first gluing search shared by the branches of one specification check."""

    def __init__(self, language: LanguageOracle, good: List[Word], connectors: List[Word],
                 m: int, mode: str, budget: int):
        self.language = language
        self.good = good
        self.connectors = connectors
        self.m = m
        self.mode = mode
        self.budget = budget
        self.visited = 0
        self.undecided = 0
        self._lock = threading.Lock()

    def _count(self) -> bool:
        with self._lock:
            self.visited += 1
            return self.visited <= self.budget

    def _periodic_ok(self, glued: Set[Word]) -> Optional[bool]:
        """Some glued word followed by a connecting word repeats admissibly."""
        periodic = self.language.periodic
        undecided = False
        for s in sorted(glued):
            for x in self.connectors:
                candidate = s + x
                if not candidate or not self.language.contains(candidate):
                    continue
                answer = periodic(candidate) if periodic is not None else None
                if answer:
                    return True
                if answer is None:
                    undecided = True
        return None if undecided else False

    def branch(self, first: Word) -> Tuple[Optional[Tuple[Word, ...]], bool]:
        """
        Search every tuple starting with first.

        Returns:
            (counterexample or None, whether the budget was exhausted)
        """
        stack = [((first,), frozenset([first]))]
        while stack:
            words, glued = stack.pop()
            if len(words) >= 2 or self.mode == "Per":
                if not self._count():
                    return None, True
            if self.mode == "Per":
                answer = self._periodic_ok(glued)
                if answer is False:
                    return words, False
                if answer is None:
                    with self._lock:
                        self.undecided += 1
            if len(words) == self.m:
                continue
            children = []
            for w in self.good:
                nxt = frozenset(
                    s + x + w
                    for s in glued
                    for x in self.connectors
                    if self.language.contains(s + x + w)
                )
                if not nxt:
                    return words + (w,), False
                children.append((words + (w,), nxt))
            stack.extend(reversed(children))
        return None, False


def check_specification(d: Decomposition, language: LanguageOracle, n_max: int, m: int = 3,
                        t: Optional[int] = None, mode: str = "S", workers: int = 1,
                        budget: Optional[int] = None) -> CheckRecord:
    """
    Exhaustive gluing check for G.

    For every tuple of nonempty G words of length at most n_max and size at
    most m, search connecting words of length exactly t (mode S), at most t
    (mode W) or exactly t with the glued word followed by a connecting word
    repeating admissibly (mode Per).

    Args:
        d: Decomposition supplying G
        language: Language oracle
        n_max: Longest G word used
        m: Largest tuple size
        t: Gap size (the decomposition's t by default)
        mode: S | W | Per
        workers: Threads over the first word of the tuples
        budget: Maximum tuples visited (Config.TUPLE_BUDGET by default)

    Returns:
        CheckRecord with the first counterexample, or pass; inconclusive
        when the budget runs out
    """
    if mode not in SPEC_MODES:
        raise ValidationError(f"Unknown specification mode {mode!r}; expected one of {', '.join(SPEC_MODES)}")
    validate_positive("n_max", n_max)
    validate_positive("m", m)
    t = d.t if t is None else t
    validate_nonnegative("t", t)
    budget = budget or Config.TUPLE_BUDGET

    good = [w for n in range(1, n_max + 1) for w in g_words(d, language, n)]
    connectors = _connecting_words(language, t, mode)
    search = _TupleSearch(language, good, connectors, max(m, 1), mode, budget)

    if workers > 1 and len(good) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(search.branch, good))
    else:
        results = []
        for first in good:
            results.append(search.branch(first))
            if results[-1][0] is not None or results[-1][1]:
                break

    counterexample = next((found for found, _ in results if found is not None), None)
    exhausted = any(over for _, over in results)

    notes = []
    closure = None
    if t == 0:
        sample = good[:64]
        closure = all(d.g(v + w) for v in sample for w in sample if language.contains(v + w))
        if closure:
            notes.append("G is closed under concatenation on the sampled pairs; pairwise gluing implies every m")
    if search.undecided:
        notes.append(f"{search.undecided} glued words had an undecided periodic test")

    if counterexample is not None:
        verdict = FAIL
        logger.info(f"Specification ({mode}) fails for {d.label} on {[format_word(w) for w in counterexample]}")
    elif exhausted:
        verdict = INCONCLUSIVE
        notes.append(f"tuple budget {budget} exhausted")
        logger.warning(f"Specification ({mode}) check for {d.label} hit the tuple budget")
    elif search.undecided:
        verdict = INCONCLUSIVE
    else:
        verdict = PASS

    return CheckRecord(
        name=f"specification-{mode}",
        depth=n_max,
        values={
            "mode": mode,
            "t": t,
            "m": m,
            "g_words": len(good),
            "connecting_words": len(connectors),
            "tuples_visited": min(search.visited, budget),
            "counterexample": [format_word(w) for w in counterexample] if counterexample else None,
            "pairwise_closure": closure,
        },
        verdict=verdict,
        notes=notes,
    )


def check_condition_I(d: Decomposition, language: LanguageOracle, n_max: int, m: int = 3,
                      workers: int = 1) -> CheckRecord:
    """Specification of G with the decomposition's gap size; periodic gluing when claimed."""
    record = check_specification(d, language, n_max, m, d.t, "Per" if d.per_flag else "S", workers)
    record.name = "condition-I"
    return record


def check_condition_II(d: Decomposition, language: LanguageOracle, N: int) -> CheckRecord:
    """
    Growth of C^p union C^s against the growth of L.

    The margin is the language proxy minus the boundary proxy (clamped at 0)
    over the trailing window; evidence when it exceeds the margin threshold.
    """
    validate_positive("N", N)
    counts = count_layers(language, N)
    boundary = [boundary_count(d, language, n) for n in range(1, N + 1)]
    language_growth = growth_estimate(counts)
    boundary_growth = growth_estimate(boundary)
    margin = language_growth.limsup_proxy - max(boundary_growth.limsup_proxy, 0.0)

    verdict = EVIDENCE if margin > Config.MARGIN_THRESHOLD else INCONCLUSIVE
    if verdict == INCONCLUSIVE:
        logger.warning(f"Condition II for {d.label} inconclusive at depth {N} (margin {margin:.4f})")

    return CheckRecord(
        name="condition-II",
        depth=N,
        values={
            "language": language_growth.as_values(),
            "boundary": boundary_growth.as_values(),
            "margin": margin,
        },
        verdict=verdict,
    )


def _extension_cost(d: Decomposition, language: LanguageOracle, v: Word, tau_max: int) -> Optional[Tuple[int, Word, Word]]:
    """Least |u| + |w| with u v w in G and |u|, |w| <= tau_max."""
    for total in range(2 * tau_max + 1):
        for a in range(max(0, total - tau_max), min(total, tau_max) + 1):
            for u in enumerate_words(language, a):
                if not language.contains(u + v):
                    continue
                for w in enumerate_words(language, total - a):
                    if d.g(u + v + w):
                        return total, u, w
    return None


def check_condition_III(d: Decomposition, language: LanguageOracle, M: int, tau_max: int,
                        n_max: int) -> CheckRecord:
    """
    Extension of G(M) words into G.

    For each v in G(M) with |v| <= n_max find u, w with |u|, |w| <= tau_max
    and u v w in G, minimizing |u| + |w|. tau is the maximum of those
    minima. Pass when every v extends; inconclusive when some v does not
    extend within tau_max (a larger tau may still work).
    """
    validate_nonnegative("M", M)
    validate_nonnegative("tau_max", tau_max)
    validate_positive("n_max", n_max)
    gm = GMFilter(d, M)

    tau = 0
    worst: Optional[Word] = None
    witness = None
    failures: List[Word] = []
    tested = 0
    for n in range(1, n_max + 1):
        for v in enumerate_words(language, n):
            if not gm.contains(v):
                continue
            tested += 1
            found = _extension_cost(d, language, v, tau_max)
            if found is None:
                failures.append(v)
                continue
            cost, u, w = found
            if worst is None or cost > tau:
                tau, worst, witness = cost, v, (u, w)

    bound = d.tau_of_M(M) if d.tau_of_M is not None else None
    values = {
        "M": M,
        "tau": tau if not failures else None,
        "observed_tau": tau,
        "worst_word": format_word(worst) if worst is not None else None,
        "witness": [format_word(witness[0]), format_word(witness[1])] if witness else None,
        "words_tested": tested,
        "failures": [format_word(v) for v in failures[:10]],
        "tau_bound": bound,
    }
    notes = []
    if bound is not None:
        values["within_bound"] = tau <= bound
        if tau > bound:
            notes.append(f"observed tau {tau} exceeds the table bound {bound}")

    verdict = PASS if not failures else INCONCLUSIVE
    if failures:
        logger.warning(f"Condition III for {d.label}: {len(failures)} words of G({M}) do not extend within {tau_max}")
    return CheckRecord(name="condition-III", depth=n_max, values=values, verdict=verdict, notes=notes)


def check_parse_cover(d: Decomposition, language: LanguageOracle, n_max: int) -> CheckRecord:
    """Every word of length at most n_max splits as C^p G C^s."""
    validate_positive("n_max", n_max)
    uncovered: List[Word] = []
    profile: Dict[int, int] = {}
    total = 0
    for n in range(1, n_max + 1):
        for w in enumerate_words(language, n):
            total += 1
            M = min_boundary(d, w)
            if M is None:
                uncovered.append(w)
            else:
                profile[M] = profile.get(M, 0) + 1

    return CheckRecord(
        name="parse-cover",
        depth=n_max,
        values={
            "words": total,
            "uncovered": [format_word(w) for w in uncovered[:10]],
            "uncovered_count": len(uncovered),
            "min_boundary_profile": {str(M): profile[M] for M in sorted(profile)},
        },
        verdict=PASS if not uncovered else FAIL,
    )


def check_density(d: Decomposition, language: LanguageOracle, n_max: int, delta: float,
                  M_max: int) -> CheckRecord:
    """
    Smallest M <= M_max with #G(M)_n / #L_n >= 1 - delta for every n <= n_max.

    Each word's least boundary is computed once, so the ratios are
    cumulative in M and therefore monotone.
    """
    validate_positive("n_max", n_max)
    validate_nonnegative("M_max", M_max)
    if not 0 < delta < 1:
        raise ValidationError(f"delta must lie in (0, 1), got {delta}")

    ratios: Dict[int, List[float]] = {M: [] for M in range(M_max + 1)}
    for n in range(1, n_max + 1):
        layer = enumerate_words(language, n)
        histogram = [0] * (M_max + 1)
        for w in layer:
            M = min_boundary(d, w, M_max)
            if M is not None:
                histogram[M] += 1
        covered = 0
        for M in range(M_max + 1):
            covered += histogram[M]
            ratios[M].append(covered / len(layer))

    chosen = next((M for M in range(M_max + 1) if min(ratios[M]) >= 1 - delta), None)
    return CheckRecord(
        name="density",
        depth=n_max,
        values={
            "delta": delta,
            "M": chosen,
            "min_ratio_by_M": {str(M): min(ratios[M]) for M in ratios},
            "ratios": {str(M): ratios[M] for M in ratios},
        },
        verdict=PASS if chosen is not None else INCONCLUSIVE,
    )


def check_counting_bounds(d: Decomposition, language: LanguageOracle, N: int, h: float,
                          window: int = 3, floor_fraction: float = 0.5) -> CheckRecord:
    """
    Counting bounds for entropy h.

    Checks #L_n >= e^{nh} and #G_n <= e^{(n+t)h} for n <= N, reports the
    observed constant max #L_n e^{-nh}, and for each n the largest l in
    [n - window, n] whose ratio #G_l e^{-lh} is at least floor_fraction of
    the largest observed ratio.
    """
    validate_positive("N", N)
    if h < 0:
        raise ValidationError(f"Entropy must be nonnegative, got {h}")

    counts = count_layers(language, N)
    g_counts = [count_g(d, language, n) for n in range(1, N + 1)]

    lower_violations = [n for n, c in enumerate(counts, start=1) if math.log(c) < n * h - LOG_SLACK]
    g_violations = [
        n for n, c in enumerate(g_counts, start=1) if c > 0 and math.log(c) > (n + d.t) * h + LOG_SLACK
    ]
    upper_constant = max(c * math.exp(-n * h) for n, c in enumerate(counts, start=1))

    g_ratios = [c * math.exp(-n * h) for n, c in enumerate(g_counts, start=1)]
    floor = floor_fraction * max(g_ratios) if g_ratios else 0.0
    good_growth: List[Optional[int]] = []
    for n in range(1, N + 1):
        chosen = None
        for ell in range(n, max(1, n - window) - 1, -1):
            if g_ratios[ell - 1] >= floor and g_ratios[ell - 1] > 0:
                chosen = ell
                break
        good_growth.append(chosen)

    return CheckRecord(
        name="counting-bounds",
        depth=N,
        values={
            "h": h,
            "language_counts": counts,
            "g_counts": g_counts,
            "lower_violations": lower_violations,
            "g_violations": g_violations,
            "upper_constant": upper_constant,
            "g_ratio_floor": floor,
            "good_growth": good_growth,
        },
        verdict=PASS if not lower_violations and not g_violations else FAIL,
    )


def _disjoint_pair(d: Decomposition, language: LanguageOracle, good: Sequence[Word]) -> Optional[Tuple[Word, Word]]:
    connectors = enumerate_words(language, d.t)
    pairs = sorted(
        ((v, w) for v in good for w in good if v != w),
        key=lambda pair: (len(pair[0]) + len(pair[1]), pair[0], pair[1]),
    )
    for v, w in pairs:
        left = concat_set(concat_set([v], connectors, language), [w], language)
        right = concat_set(concat_set([w], connectors, language), [v], language)
        if left and right and not left & right:
            return v, w
    return None


def _single_orbit(language: LanguageOracle, counts: Sequence[int]) -> Optional[Word]:
    """The primitive word whose orbit closure is the shift, if the counts and words say so."""
    N = len(counts)
    p = counts[-1]
    if p == 0 or p > N or any(c != p for c in counts[p - 1:]):
        return None
    layer = enumerate_words(language, N)
    base = layer[0][:p]
    if not is_primitive(base):
        return None
    orbit = set(rotations(base))
    for w in layer:
        if w[:p] not in orbit or any(w[i] != w[i - p] for i in range(p, len(w))):
            return None
    return base


def dichotomy_diagnostic(language: LanguageOracle, d: Decomposition, N: int,
                         pair_length: int = 6) -> CheckRecord:
    """
    Positive entropy or a single periodic orbit.

    Positive-entropy evidence needs #L_N > N + 1 and a pair v, w in G with
    v L_t w and w L_t v disjoint, which gives entropy at least
    log 2 / (|v| + |w| + 2t). Otherwise the words are tested for being the
    rotations of one primitive word.
    """
    validate_positive("N", N)
    counts = count_layers(language, N)

    values: Dict[str, object] = {"counts": counts}
    if counts[-1] > N + 1:
        good = [w for n in range(1, min(pair_length, N) + 1) for w in g_words(d, language, n)]
        pair = _disjoint_pair(d, language, good)
        if pair is not None:
            v, w = pair
            values.update({
                "outcome": "positive-entropy-evidence",
                "witness": [format_word(v), format_word(w)],
                "entropy_lower_bound": math.log(2) / (len(v) + len(w) + 2 * d.t),
            })
            return CheckRecord(name="dichotomy", depth=N, values=values, verdict=EVIDENCE)
        logger.info(f"No disjoint pair among G words of {d.label} up to length {pair_length}")

    base = _single_orbit(language, counts)
    if base is not None:
        values.update({"outcome": "single-periodic-orbit", "orbit": format_word(base), "period": len(base)})
        return CheckRecord(name="dichotomy", depth=N, values=values, verdict=EVIDENCE)

    values["outcome"] = "inconclusive"
    return CheckRecord(name="dichotomy", depth=N, values=values, verdict=INCONCLUSIVE)
