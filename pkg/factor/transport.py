"""
Factors of a shift under a block code.

FactorLanguage decides membership in the image language exactly: its
automaton is the lazily determinized product of the source automaton with a
window of the last 2k source symbols, so Phi is followed forward without
enumerating preimages. transport_decomposition() moves a source
decomposition to the factor; the gap size grows by 2k.
"""

from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple

from config import Config
from decomposition.checks import check_condition_III
from decomposition.core import Decomposition, boundary_count, g_words, prefix_words, suffix_words
from factor.code import BlockCode, apply_code
from language.engine import count_layers, enumerate_words, growth_estimate
from language.oracle import Automaton, LanguageOracle, repeats_admissibly
from reports.report import CheckRecord, EVIDENCE, INCONCLUSIVE
from utils.errors import BudgetExceeded, ValidationError
from words.word import Alphabet, EMPTY, Word
import logging

logger = logging.getLogger(__name__)

# extra source lengths searched for 2k-prefixes and suffixes of G words
EXTENSION_SLACK = 8


class FactorAutomaton(Automaton):
    """
    Subset automaton of the factor language.

    A state is a frozenset of (source state, last 2k source symbols) pairs;
    reading a target symbol b keeps every source continuation a with
    phi(window + a) == b.
    """

    def __init__(self, code: BlockCode, source: Automaton, windows: List[Word]):
        initial = frozenset(
            (state, window)
            for window in windows
            for state in [source.run(window)]
            if state is not None
        )
        super().__init__(initial, code.target_size)
        self.code = code
        self.source = source

    def _transition(self, state: FrozenSet, symbol: int) -> Optional[FrozenSet]:
        nxt = set()
        for source_state, window in state:
            for a, target in self.source.successors(source_state):
                full = window + (a,)
                if self.code.table.get(full) == symbol:
                    nxt.add((target, full[1:]))
        return frozenset(nxt) or None


class FactorLanguage:
    """
    Image of a source language under a block code.

    Attributes:
        code: The block code
        source: Source language oracle
        automaton: FactorAutomaton built over the source presentation
    """

    def __init__(self, code: BlockCode, source: LanguageOracle, presentation: Optional[Automaton] = None):
        presentation = presentation or source.automaton
        if presentation is None:
            raise ValidationError(f"Factor of {source.name or 'language'} needs a source automaton")
        if code.source_size != source.alphabet.size:
            raise ValidationError(
                f"Code expects {code.source_size} source symbols, {source.name} has {source.alphabet.size}"
            )
        missing = code.check_total(source)
        if missing:
            raise ValidationError(f"Code table misses {len(missing)} admissible windows")
        self.code = code
        self.source = source
        self.automaton = FactorAutomaton(code, presentation, enumerate_words(source, 2 * code.k))

    def contains(self, w: Word) -> bool:
        return self.automaton.accepts(w)

    def periodic(self, w: Word) -> Optional[bool]:
        return repeats_admissibly(self.automaton, w)

    def oracle(self) -> LanguageOracle:
        params = {"family": "factor", "code": self.code.params(), "source": dict(self.source.params)}
        return LanguageOracle(
            alphabet=Alphabet(self.code.target_size),
            contains_fn=self.contains,
            automaton=self.automaton,
            name=f"factor({self.source.name})",
            params=params if self.source.params else {},
            periodic=self.periodic,
        )

    def image_layer(self, n: int) -> FrozenSet[Word]:
        """Phi(L_{n+2k}), computed by brute force over the source layer."""
        return frozenset(apply_code(self.code, w) for w in enumerate_words(self.source, n + 2 * self.code.k))


def _boundary_blocks(code: BlockCode, d: Decomposition, source: LanguageOracle) -> Tuple[FrozenSet[Word], FrozenSet[Word]]:
    """2k-prefixes and 2k-suffixes of G words found among G words of length 2k..4k+slack."""
    span = 2 * code.k
    heads = set()
    tails = set()
    for n in range(span, 2 * span + EXTENSION_SLACK + 1):
        for g in g_words(d, source, n):
            heads.add(g[:span])
            tails.add(g[n - span:])
    if not heads:
        raise ValidationError(f"G has no words of length >= {span}; the transported decomposition is undefined")
    return frozenset(heads), frozenset(tails)


def transport_decomposition(code: BlockCode, d: Decomposition, source: LanguageOracle,
                            factor: Optional[FactorLanguage] = None) -> Decomposition:
    """
    Decomposition of the factor language.

    G~ = Phi(G), C~p = Phi(C^p . i^p_2k(G)), C~s = Phi(i^s_2k(G) . C^s), with
    gap size t + 2k and the periodic flag carried over. Membership is by
    preimage search over the source layers, memoized per length.

    Raises:
        ValidationError: If G has no words of length >= 2k
        BudgetExceeded: If a source layer exceeds the preimage budget
    """
    span = 2 * code.k
    heads, tails = _boundary_blocks(code, d, source)
    budget = Config.PREIMAGE_BUDGET
    factor = factor or FactorLanguage(code, source)

    def checked(words, n: int):
        if len(words) > budget:
            raise BudgetExceeded(f"preimage search at length {n}", budget)
        return words

    @lru_cache(maxsize=None)
    def g_layer(n: int) -> FrozenSet[Word]:
        return frozenset(apply_code(code, g) for g in checked(g_words(d, source, n + span), n))

    @lru_cache(maxsize=None)
    def cp_layer(n: int) -> FrozenSet[Word]:
        words = checked(prefix_words(d, source, n), n)
        return frozenset(
            apply_code(code, u + x) for u in words for x in heads if source.contains(u + x)
        )

    @lru_cache(maxsize=None)
    def cs_layer(n: int) -> FrozenSet[Word]:
        words = checked(suffix_words(d, source, n), n)
        return frozenset(
            apply_code(code, x + s) for s in words for x in tails if source.contains(x + s)
        )

    def in_g(w: Word) -> bool:
        return not w or w in g_layer(len(w))

    def in_cp(w: Word) -> bool:
        return not w or w in cp_layer(len(w))

    def in_cs(w: Word) -> bool:
        return not w or w in cs_layer(len(w))

    return Decomposition(
        cp=in_cp,
        g=in_g,
        cs=in_cs,
        t=d.t + span,
        per_flag=d.per_flag,
        label=f"transported({d.label}, k={code.k})",
        cp_words=lambda n: frozenset([EMPTY]) if n == 0 else cp_layer(n),
        cs_words=lambda n: frozenset([EMPTY]) if n == 0 else cs_layer(n),
    )


def factor_entropy_gap(code: BlockCode, d: Decomposition, source: LanguageOracle, N: int,
                       factor: Optional[FactorLanguage] = None) -> CheckRecord:
    """
    Growth of the factor language against the transported prefix and suffix collections.

    Verdict evidence when the trailing-window margin exceeds the margin
    threshold, inconclusive otherwise.
    """
    factor = factor or FactorLanguage(code, source)
    language = factor.oracle()
    transported = transport_decomposition(code, d, source, factor)

    counts = count_layers(language, N)
    boundary = [boundary_count(transported, language, n) for n in range(1, N + 1)]
    language_growth = growth_estimate(counts)
    boundary_growth = growth_estimate(boundary)
    margin = language_growth.limsup_proxy - max(boundary_growth.limsup_proxy, 0.0)

    source_boundary = [boundary_count(d, source, n) for n in range(1, N + 1)]
    source_counts = count_layers(source, 2 * code.k) if code.k > 0 else []
    words_2k = source_counts[-1] if source_counts else 1
    cp_bound_ok = all(
        len(transported.cp_words(n)) <= words_2k * len(prefix_words(d, source, n)) for n in range(1, N + 1)
    )

    verdict = EVIDENCE if margin > Config.MARGIN_THRESHOLD else INCONCLUSIVE
    if verdict == INCONCLUSIVE:
        logger.warning(f"Factor entropy gap for {language.name} inconclusive (margin {margin:.4f})")

    return CheckRecord(
        name="factor-entropy-gap",
        depth=N,
        values={
            "factor_counts": list(counts),
            "factor_rates": list(language_growth.rates),
            "boundary_counts": boundary,
            "boundary_rates": list(boundary_growth.rates),
            "source_boundary_counts": source_boundary,
            "margin": margin,
            "gap_size": transported.t,
            "cp_count_bound": cp_bound_ok,
        },
        verdict=verdict,
    )


def factor_condition_III(code: BlockCode, d: Decomposition, source: LanguageOracle, M: int,
                         tau_max: int, n_max: int, factor: Optional[FactorLanguage] = None) -> CheckRecord:
    """Extension check on the transported decomposition."""
    factor = factor or FactorLanguage(code, source)
    transported = transport_decomposition(code, d, source, factor)
    record = check_condition_III(transported, factor.oracle(), M, tau_max, n_max)
    record.name = "factor-condition-III"
    return record
