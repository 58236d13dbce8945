"""
Empirical measures of maximal entropy.

The word-average measure spreads mass evenly over the words of L_m and
averages over the in-window shifts: the estimate of a cylinder [w] is the
number of occurrences of w in words of L_m divided by (m - |w| + 1) #L_m.
Occurrences are counted exactly with a forward/backward pass over the
follower automaton, so no word of L_m is ever materialized.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

from language.engine import enumerate_words
from language.oracle import Automaton, LanguageOracle, State
from utils.errors import ValidationError
from words.word import Word, format_word
from words.rules import validate_positive
import logging

logger = logging.getLogger(__name__)

WORD_AVERAGE = "word-average"
PERIODIC = "periodic"


@dataclass
class EmpiricalMeasure:
    """
    Cylinder estimates of one empirical measure.

    Attributes:
        kind: word-average | periodic
        m: Ambient depth (word length or period bound)
        cylinder: Word -> exact estimate
    """

    kind: str
    m: int
    cylinder: Dict[Word, Fraction] = field(default_factory=dict)

    def exact(self, w: Word) -> Fraction:
        try:
            return self.cylinder[tuple(w)]
        except KeyError:
            raise ValidationError(f"Cylinder {format_word(w) or 'ε'} was not estimated")

    def __call__(self, w: Word) -> float:
        return float(self.exact(w))

    def layer(self, length: int) -> Dict[Word, Fraction]:
        return {w: value for w, value in self.cylinder.items() if len(w) == length}

    def layer_total(self, length: int) -> Fraction:
        return sum(self.layer(length).values(), Fraction(0))


class _OccurrenceCounter:
    """Forward and backward path counts over a follower automaton for words of length m."""

    def __init__(self, automaton: Automaton, m: int):
        self.automaton = automaton
        self.m = m
        self.forward: List[Dict[State, int]] = [{automaton.initial: 1}]
        for _ in range(m):
            nxt: Dict[State, int] = {}
            for state, count in self.forward[-1].items():
                for _, target in automaton.successors(state):
                    nxt[target] = nxt.get(target, 0) + count
            self.forward.append(nxt)
        self.total = sum(self.forward[m].values())
        self._backward: Dict[tuple, int] = {}

    def backward(self, state: State, r: int) -> int:
        """Number of words of length r readable from state."""
        key = (state, r)
        cached = self._backward.get(key)
        if cached is not None:
            return cached
        if r == 0:
            value = 1
        else:
            value = sum(self.backward(target, r - 1) for _, target in self.automaton.successors(state))
        self._backward[key] = value
        return value

    def occurrences(self, w: Word) -> int:
        """Sum over offsets k of #{y in L_m : y[k:k+|w|] = w}."""
        total = 0
        for k in range(self.m - len(w) + 1):
            rest = self.m - k - len(w)
            for state, count in self.forward[k].items():
                end = self.automaton.run(w, state)
                if end is not None:
                    total += count * self.backward(end, rest)
        return total


def empirical_mme(language: LanguageOracle, m: int, targets: Iterable[Word],
                  presentation: Optional[Automaton] = None, workers: int = 1) -> EmpiricalMeasure:
    """
    Word-average measure at depth m on the given cylinders.

    Args:
        language: Language oracle
        m: Depth
        targets: Cylinder words, each of length at most m / 2
        presentation: Automaton used for counting (the oracle's by default);
                      without one, L_m is enumerated
        workers: Threads over the targets

    Raises:
        ValidationError: If a target is longer than m / 2
    """
    validate_positive("m", m)
    targets = [tuple(w) for w in targets]
    for w in targets:
        if 2 * len(w) > m:
            raise ValidationError(f"Target {format_word(w)} is longer than m/2 = {m / 2}")

    automaton = presentation or language.automaton
    if automaton is not None:
        counter = _OccurrenceCounter(automaton, m)
        total = counter.total
        # the backward table is shared, so warm it before fanning out
        for state in counter.forward[0]:
            counter.backward(state, m)
        if workers > 1 and len(targets) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                hits = list(pool.map(counter.occurrences, targets))
        else:
            hits = [counter.occurrences(w) for w in targets]
    else:
        layer = enumerate_words(language, m)
        total = len(layer)
        hits = []
        for w in targets:
            count = 0
            for y in layer:
                count += sum(1 for k in range(m - len(w) + 1) if y[k:k + len(w)] == w)
            hits.append(count)

    if total == 0:
        raise ValidationError(f"{language.name or 'language'} has no words of length {m}")

    cylinder = {
        w: Fraction(count, (m - len(w) + 1) * total) for w, count in zip(targets, hits)
    }
    logger.debug(f"Empirical measure of {language.name or 'language'} at depth {m}: {len(cylinder)} cylinders")
    return EmpiricalMeasure(kind=WORD_AVERAGE, m=m, cylinder=cylinder)


def measure_entropy(mu: EmpiricalMeasure, length: int) -> float:
    """(1/length) times the Shannon entropy of mu on the estimated length-`length` cylinders."""
    validate_positive("length", length)
    values = [float(p) for p in mu.layer(length).values() if p > 0]
    return -sum(p * math.log(p) for p in values) / length


def compatibility_defect(mu: EmpiricalMeasure, length: int) -> float:
    """
    max over estimated w of length `length` of |mu(w) - sum_a mu(wa)| and |mu(w) - sum_a mu(aw)|.

    Needs the cylinders of lengths `length` and `length + 1`; cylinders
    missing from the longer layer count as 0.
    """
    shorter = mu.layer(length)
    longer = mu.layer(length + 1)
    if not longer:
        raise ValidationError(f"No cylinders of length {length + 1} were estimated")
    right: Dict[Word, Fraction] = {}
    left: Dict[Word, Fraction] = {}
    for w, value in longer.items():
        right[w[:-1]] = right.get(w[:-1], Fraction(0)) + value
        left[w[1:]] = left.get(w[1:], Fraction(0)) + value
    defect = Fraction(0)
    for w, value in shorter.items():
        defect = max(defect, abs(value - right.get(w, Fraction(0))), abs(value - left.get(w, Fraction(0))))
    return float(defect)
