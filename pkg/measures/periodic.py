"""
Periodic points and the measures equidistributed on them.

A periodic point is listed as the primitive word w with x = w^inf, so the
rotations of w are separate points and Per(n), the number of points with
least period at most n, is the number of listed words.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

from language.engine import enumerate_words
from language.oracle import Automaton, LanguageOracle, repeats_admissibly
from measures.empirical import EmpiricalMeasure, PERIODIC
from reports.report import CheckRecord, EVIDENCE, INCONCLUSIVE
from utils.errors import ValidationError
from words.word import Word, format_word, is_primitive
from words.rules import validate_positive
import logging

logger = logging.getLogger(__name__)


@dataclass
class PeriodicSet:
    """
    Periodic points of least period at most n.

    Attributes:
        n: Period bound
        points: Least period q -> primitive words w with w^inf in the shift
        undecided: Primitive words whose admissibility could not be decided
    """

    n: int
    points: Dict[int, List[Word]] = field(default_factory=dict)
    undecided: List[Word] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(len(words) for words in self.points.values())

    def words(self) -> List[Word]:
        return [w for q in sorted(self.points) for w in self.points[q]]

    def per_count(self, n: int) -> int:
        """Points of least period at most n."""
        return sum(len(self.points.get(q, [])) for q in range(1, n + 1))

    def fixed_count(self, n: int) -> int:
        """Points with sigma^n x = x: least period dividing n."""
        return sum(len(self.points.get(q, [])) for q in range(1, n + 1) if n % q == 0)


def _power_check(language: LanguageOracle, w: Word, repeat_check: int) -> bool:
    copies = max(2, -(-repeat_check // len(w)))
    return language.contains(w * copies)


def periodic_points(language: LanguageOracle, n: int, repeat_check: Optional[int] = None,
                    presentation: Optional[Automaton] = None) -> PeriodicSet:
    """
    Enumerate the periodic points of least period at most n.

    Admissibility of w^inf is decided by, in order: a finite presentation
    (state cycle of the run of w), the oracle's own periodic test, or a
    power check up to repeat_check symbols. Words the oracle cannot decide
    are listed in undecided and not counted.
    """
    validate_positive("n", n)
    repeat_check = repeat_check or 4 * n
    ps = PeriodicSet(n)
    for q in range(1, n + 1):
        listed = []
        for w in enumerate_words(language, q):
            if not is_primitive(w):
                continue
            if presentation is not None:
                answer = repeats_admissibly(presentation, w)
            elif language.periodic is not None:
                answer = language.periodic(w)
            else:
                answer = _power_check(language, w, repeat_check)
            if answer is None:
                ps.undecided.append(w)
            elif answer:
                listed.append(w)
        ps.points[q] = listed

    if ps.undecided:
        logger.warning(f"{len(ps.undecided)} periodic words of {language.name} undecided up to period {n}")
    logger.debug(f"Per({n}) of {language.name or 'language'} = {ps.total}")
    return ps


def _starts_with(w: Word, target: Word) -> bool:
    """Whether w^inf begins with target."""
    if not target:
        return True
    copies = -(-len(target) // len(w))
    return (w * copies)[:len(target)] == target


def periodic_measure(ps: PeriodicSet, targets: Iterable[Word]) -> EmpiricalMeasure:
    """
    Uniform measure on Per(n), evaluated on one-sided cylinders.

    Raises:
        ValidationError: If there are no periodic points
    """
    points = ps.words()
    if not points:
        raise ValidationError(f"No periodic points of period at most {ps.n}")
    total = len(points)
    cylinder = {}
    for target in targets:
        hits = sum(1 for w in points if _starts_with(w, target))
        cylinder[tuple(target)] = Fraction(hits, total)
    return EmpiricalMeasure(kind=PERIODIC, m=ps.n, cylinder=cylinder)


def entropy_from_periodic(ps: PeriodicSet, h: Optional[float] = None, tolerance: float = 0.05) -> CheckRecord:
    """
    Growth rates (1/n) log #Per(n) and (1/n) log #Fix(sigma^n) for n = 1..N.

    With h given, evidence when the deepest Fix rate is within tolerance of h.
    """
    N = ps.n
    per_counts = [ps.per_count(n) for n in range(1, N + 1)]
    fix_counts = [ps.fixed_count(n) for n in range(1, N + 1)]

    def rate(count: int, n: int) -> float:
        return math.log(count) / n if count > 0 else float("-inf")

    per_rates = [rate(c, n) for n, c in enumerate(per_counts, start=1)]
    fix_rates = [rate(c, n) for n, c in enumerate(fix_counts, start=1)]

    values = {
        "per_counts": per_counts,
        "per_rates": per_rates,
        "fix_counts": fix_counts,
        "fix_rates": fix_rates,
        "undecided": [format_word(w) for w in ps.undecided[:10]],
    }
    verdict = INCONCLUSIVE
    if h is not None:
        values["h"] = h
        values["per_deviation"] = per_rates[-1] - h
        values["fix_deviation"] = fix_rates[-1] - h
        if abs(fix_rates[-1] - h) <= tolerance:
            verdict = EVIDENCE
    return CheckRecord(name="periodic-entropy", depth=N, values=values, verdict=verdict)
