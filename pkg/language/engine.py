"""
Enumeration, counting and growth-rate estimation.

enumerate_words() builds layer n from layer n-1 by appending one symbol and
filtering; count_dp() counts paths through the follower automaton and never
materializes words. Both must agree on every language that has an automaton.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config import Config
from language.cache import LayerCache, get_layer_cache
from language.oracle import LanguageOracle, State
from reports.report import CheckRecord, FAIL, PASS
from utils.errors import AutomatonMissing, BudgetExceeded
from words.word import EMPTY, Word
from words.rules import validate_positive
import logging

logger = logging.getLogger(__name__)


def _extend(language: LanguageOracle, words: Sequence[Word]) -> List[Word]:
    """One-symbol extensions of words that stay in the language."""
    automaton = language.automaton
    out: List[Word] = []
    for word in words:
        if automaton is not None:
            state = automaton.run(word)
            if state is None:
                continue
            for symbol, _ in automaton.successors(state):
                out.append(word + (symbol,))
        else:
            for symbol in language.alphabet.symbols:
                candidate = word + (symbol,)
                if language.contains(candidate):
                    out.append(candidate)
    return out


def enumerate_words(language: LanguageOracle, n: int, cache: Optional[LayerCache] = None,
                    budget: Optional[int] = None, workers: int = 1) -> List[Word]:
    """
    All words of length n in the language, in lexicographic order.

    Layers are built from the deepest cached layer upward; each new layer is
    written back to the cache.

    Args:
        language: Language oracle
        n: Word length (0 gives [ε])
        cache: Layer cache (process-wide cache by default)
        budget: Maximum layer size (Config.ENUMERATION_BUDGET by default)
        workers: Threads used to extend a layer

    Returns:
        Sorted list of words

    Raises:
        BudgetExceeded: If some layer exceeds the budget
    """
    if n == 0:
        return [EMPTY]
    validate_positive("n", n)

    cache = cache if cache is not None else get_layer_cache()
    budget = budget or Config.ENUMERATION_BUDGET
    family_id = language.family_id

    start, layer = cache.deepest_words(family_id, n)
    if layer is None:
        start, layer = 0, (EMPTY,)
    elif start == n:
        logger.debug(f"Layer {n} of {language.name or 'language'} served from cache")
        return list(layer)

    words = list(layer)
    for m in range(start + 1, n + 1):
        if workers > 1 and len(words) > 1024:
            chunk = math.ceil(len(words) / workers)
            parts = [words[i:i + chunk] for i in range(0, len(words), chunk)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                extended = [w for part in pool.map(lambda p: _extend(language, p), parts) for w in part]
        else:
            extended = _extend(language, words)

        if len(extended) > budget:
            raise BudgetExceeded(f"enumeration of layer {m} of {language.name or 'language'}", budget)

        extended.sort()
        words = extended
        cache.put_words(family_id, m, words)
        logger.debug(f"Enumerated layer {m}: {len(words)} words")

    return words


def count_dp(language: LanguageOracle, n: int) -> int:
    """
    Number of words of length n, by dynamic programming over the automaton.

    Raises:
        AutomatonMissing: If the oracle has no automaton
    """
    return count_layers(language, n, require_automaton=True)[-1] if n > 0 else 1


def count_layers(language: LanguageOracle, N: int, cache: Optional[LayerCache] = None,
                 require_automaton: bool = False) -> List[int]:
    """
    Counts #L_n for n = 1..N.

    Uses the automaton when present, enumeration otherwise.

    Raises:
        AutomatonMissing: If require_automaton is set and the oracle has none
    """
    cache = cache if cache is not None else get_layer_cache()
    family_id = language.family_id
    automaton = language.automaton

    cached = [cache.get_count(family_id, n) for n in range(1, N + 1)]
    if all(count is not None for count in cached) and (automaton is not None or not require_automaton):
        return [int(count) for count in cached]

    if automaton is None:
        if require_automaton:
            raise AutomatonMissing(f"{language.name or 'language'} has no counting automaton")
        return [len(enumerate_words(language, n, cache=cache)) for n in range(1, N + 1)]

    counts: List[int] = []
    layer: Dict[State, int] = {automaton.initial: 1}
    for n in range(1, N + 1):
        nxt: Dict[State, int] = {}
        for state, count in layer.items():
            for _, target in automaton.successors(state):
                nxt[target] = nxt.get(target, 0) + count
        layer = nxt
        total = sum(layer.values())
        counts.append(total)
        cache.put_count(family_id, n, total)
    return counts


def count_ending(automaton, n: int, accept: Callable[[State], bool], initial: Optional[State] = None) -> int:
    """Number of length-n words whose run from initial ends in an accepted state."""
    layer: Dict[State, int] = {automaton.initial if initial is None else initial: 1}
    for _ in range(n):
        nxt: Dict[State, int] = {}
        for state, count in layer.items():
            for _, target in automaton.successors(state):
                nxt[target] = nxt.get(target, 0) + count
        layer = nxt
    return sum(count for state, count in layer.items() if accept(state))


@dataclass
class GrowthEstimate:
    """Counts of a collection with their exponential growth rates."""

    counts: Tuple[int, ...]
    rates: Tuple[float, ...]
    limsup_proxy: float
    window: Tuple[int, int]
    zero_counts: List[int] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.counts)

    @property
    def deepest_rate(self) -> float:
        return self.rates[-1] if self.rates else float("-inf")

    def as_values(self) -> Dict[str, object]:
        return {
            "counts": list(self.counts),
            "rates": list(self.rates),
            "limsup_proxy": self.limsup_proxy,
            "window": list(self.window),
            "zero_counts": self.zero_counts,
        }


def growth_estimate(counts: Sequence[int]) -> GrowthEstimate:
    """
    Growth rates (1/n) log #D_n and the trailing-window limsup proxy.

    Zero counts get rate -inf and are listed in zero_counts. The proxy is the
    maximum rate over the last ceil(N/3) entries.
    """
    counts = tuple(int(count) for count in counts)
    if any(count < 0 for count in counts):
        raise ValueError("Counts must be nonnegative")

    rates = []
    zeros = []
    for n, count in enumerate(counts, start=1):
        if count == 0:
            rates.append(float("-inf"))
            zeros.append(n)
        else:
            rates.append(math.log(count) / n)

    N = len(counts)
    if N == 0:
        return GrowthEstimate((), (), float("-inf"), (0, 0), [])

    width = math.ceil(N / 3)
    proxy = max(rates[N - width:])
    return GrowthEstimate(counts, tuple(rates), proxy, (N - width + 1, N), zeros)


def check_language_axioms(language: LanguageOracle, n: int) -> CheckRecord:
    """
    Spot-check subword closure and right extendability at length n.

    Every length-(n-1) prefix and suffix of a word in L_n must lie in
    L_{n-1}, and every word of L_{n-1} must extend by some symbol.
    """
    validate_positive("n", n)
    upper = enumerate_words(language, n)
    lower = set(enumerate_words(language, n - 1))

    closure_violations = [w for w in upper if w[1:] not in lower or w[:-1] not in lower]
    extendable = {w[:-1] for w in upper}
    dead_ends = sorted(lower - extendable)

    verdict = PASS if not closure_violations and not dead_ends else FAIL
    return CheckRecord(
        name="language-axioms",
        depth=n,
        values={
            "words": len(upper),
            "closure_violations": [list(w) for w in closure_violations[:10]],
            "dead_ends": [list(w) for w in dead_ends[:10]],
        },
        verdict=verdict,
    )
