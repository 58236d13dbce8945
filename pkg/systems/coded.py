"""
Coded systems.

The language is the subword closure of all free concatenations of a finite
generator list. Membership runs a nondeterministic parse: the state is
either the boundary B between two generators or a pair (g, o) meaning o
symbols of generator g have been read. Starting anywhere inside a generator
and stopping anywhere accounts for the subword closure. The deterministic
automaton is the lazily built subset construction of that parse.
"""

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from config import Config
from decomposition.core import Decomposition
from language.engine import count_layers, growth_estimate
from language.oracle import Automaton, LanguageOracle, repeats_admissibly
from reports.report import CheckRecord, EVIDENCE, INCONCLUSIVE
from utils.errors import ValidationError
from words.word import Alphabet, EMPTY, Word, format_word, parse_word
import logging

logger = logging.getLogger(__name__)

BOUNDARY = "B"

CASE_1 = "evidence-for-case-1"
CASE_2 = "evidence-for-case-2"
CASE_NONE = "inconclusive"


@dataclass(frozen=True)
class GeneratorSet:
    """
    A finite list of generators.

    Attributes:
        generators: Distinct nonempty words, sorted by length then lex
        alphabet: Common alphabet
        truncated: True when the list truncates an infinite family;
                   reports then treat c_n and counts as lower bounds
        truncation: Length bound used for the truncation, if any
    """

    generators: Tuple[Word, ...]
    alphabet: Alphabet
    truncated: bool = False
    truncation: Optional[int] = None

    @property
    def max_len(self) -> int:
        return max(len(g) for g in self.generators)

    def params(self) -> Dict[str, object]:
        return {
            "family": "coded",
            "alphabet": self.alphabet.size,
            "generators": [format_word(g) for g in self.generators],
            "truncated": self.truncated,
        }


def build_generator_set(generators: Iterable[Word], alphabet_size: Optional[int] = None,
                        truncated: bool = False, truncation: Optional[int] = None) -> GeneratorSet:
    """
    Validate and normalize a generator list.

    Raises:
        ValidationError: If the list is empty or contains the empty word
    """
    unique = sorted({tuple(g) for g in generators}, key=lambda g: (len(g), g))
    if not unique:
        raise ValidationError("Generator set cannot be empty")
    if any(len(g) == 0 for g in unique):
        raise ValidationError("Generators must be nonempty words")
    size = alphabet_size or max(2, max(max(g) for g in unique) + 1)
    alphabet = Alphabet(size)
    for g in unique:
        alphabet.validate(g)
    return GeneratorSet(tuple(unique), alphabet, truncated, truncation)


def load_generators(path: str, alphabet_size: Optional[int] = None) -> GeneratorSet:
    """
    Read a generator file: one word per line, '#' comments and blank lines ignored.

    Raises:
        ValidationError: If the file is missing or a line does not parse
    """
    file = Path(path)
    if not file.exists():
        raise ValidationError(f"Generator file not found: {path}")
    words = []
    for number, line in enumerate(file.read_text().splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            words.append(parse_word(text))
        except ValidationError as e:
            raise ValidationError(f"{path}:{number}: {e}")
    logger.info(f"Loaded {len(words)} generators from {path}")
    return build_generator_set(words, alphabet_size)


def dump_generators(gen: GeneratorSet, path: str) -> None:
    Path(path).write_text("".join(format_word(g) + "\n" for g in gen.generators))


def _advance(gen: GeneratorSet, state, symbol: int) -> List:
    """NFA successors of one parse state."""
    out = []
    if state == BOUNDARY:
        for index, g in enumerate(gen.generators):
            if g[0] == symbol:
                out.append(BOUNDARY if len(g) == 1 else (index, 1))
        return out
    index, offset = state
    g = gen.generators[index]
    if g[offset] == symbol:
        out.append(BOUNDARY if offset + 1 == len(g) else (index, offset + 1))
    return out


def _interior_states(gen: GeneratorSet) -> List[Tuple[int, int]]:
    return [(index, offset) for index, g in enumerate(gen.generators) for offset in range(1, len(g))]


class CodedAutomaton(Automaton):
    """Subset construction of the parse NFA; states are frozensets of parse states."""

    def __init__(self, gen: GeneratorSet, initial: FrozenSet):
        super().__init__(initial, gen.alphabet.size)
        self.gen = gen

    def _transition(self, state: FrozenSet, symbol: int) -> Optional[FrozenSet]:
        nxt = frozenset(target for source in state for target in _advance(self.gen, source, symbol))
        return nxt or None


def language_automaton(gen: GeneratorSet) -> CodedAutomaton:
    """Automaton of the closed language (start anywhere, stop anywhere)."""
    return CodedAutomaton(gen, frozenset([BOUNDARY] + _interior_states(gen)))


def concatenation_automaton(gen: GeneratorSet) -> CodedAutomaton:
    """Automaton for exact concatenations (start at B; accept when B is reachable)."""
    return CodedAutomaton(gen, frozenset([BOUNDARY]))


class CodedParse(NamedTuple):
    """Witness parse w = head . g_1 ... g_m . tail, or w inside a single generator."""

    head: Word
    body: Tuple[Word, ...]
    tail: Word
    inner: Optional[Tuple[Word, int]] = None


def coded_parse(gen: GeneratorSet, w: Word) -> Optional[CodedParse]:
    """
    Recover a witness parse of w from the parse table, or None if w is not in the language.

    head is a suffix of a generator, body the complete generators, tail a
    prefix of a generator. Words that sit strictly inside one generator
    are returned with inner = (generator, offset).
    """
    initial = [BOUNDARY] + _interior_states(gen)
    table: List[Dict] = [{state: None for state in initial}]
    for symbol in w:
        layer: Dict = {}
        for source in table[-1]:
            for target in _advance(gen, source, symbol):
                layer.setdefault(target, source)
        if not layer:
            return None
        table.append(layer)

    state = BOUNDARY if BOUNDARY in table[-1] else next(iter(sorted(table[-1], key=str)))
    path = [state]
    for position in range(len(w), 0, -1):
        state = table[position][state]
        path.append(state)
    path.reverse()

    cuts = [i for i, s in enumerate(path) if s == BOUNDARY]
    if not cuts:
        index, offset = path[0]
        return CodedParse(EMPTY, (), EMPTY, (gen.generators[index], offset))
    body = tuple(w[a:b] for a, b in zip(cuts, cuts[1:]))
    return CodedParse(w[:cuts[0]], body, w[cuts[-1]:])


def coded_contains(gen: GeneratorSet, w: Word) -> bool:
    """Membership in the coded language (subword closure of concatenations)."""
    return language_automaton_cached(gen).accepts(w)


@lru_cache(maxsize=64)
def language_automaton_cached(gen: GeneratorSet) -> CodedAutomaton:
    return language_automaton(gen)


def coded_oracle(gen: GeneratorSet, name: Optional[str] = None) -> LanguageOracle:
    automaton = language_automaton_cached(gen)

    return LanguageOracle(
        alphabet=gen.alphabet,
        contains_fn=automaton.accepts,
        automaton=automaton,
        name=name or f"coded:{len(gen.generators)} generators",
        params=gen.params(),
        periodic=lambda w: repeats_admissibly(automaton, w),
    )


def generator_prefixes(gen: GeneratorSet, n: int) -> FrozenSet[Word]:
    return frozenset(g[:n] for g in gen.generators if len(g) >= n)


def generator_suffixes(gen: GeneratorSet, n: int) -> FrozenSet[Word]:
    return frozenset(g[len(g) - n:] for g in gen.generators if len(g) >= n)


def coded_cn(gen: GeneratorSet, n: int) -> int:
    """c_n: number of distinct length-n prefixes or suffixes of generators."""
    return len(generator_prefixes(gen, n) | generator_suffixes(gen, n))


@dataclass(frozen=True)
class TauTable:
    """Extension bounds for G(M) words of a coded system."""

    M: int
    tau_p: int
    tau_s: int

    @property
    def tau(self) -> int:
        return self.tau_p + self.tau_s


def tau_table(gen: GeneratorSet, M: int) -> TauTable:
    """
    tau^p(M): max over generator suffixes u with |u| <= M of the shortest
    generator ending in u; tau^s(M): the same for prefixes and generators
    starting with u. tau(M) = tau^p(M) + tau^s(M).
    """
    def shortest(match) -> int:
        return min(len(g) for g in gen.generators if match(g))

    tau_p = 0
    tau_s = 0
    for n in range(1, M + 1):
        for u in generator_suffixes(gen, n):
            tau_p = max(tau_p, shortest(lambda g: len(g) >= len(u) and g[len(g) - len(u):] == u))
        for u in generator_prefixes(gen, n):
            tau_s = max(tau_s, shortest(lambda g: len(g) >= len(u) and g[:len(u)] == u))
    return TauTable(M, tau_p, tau_s)


def coded_decomposition(gen: GeneratorSet) -> Decomposition:
    """
    Canonical decomposition of a coded system.

    G = exact concatenations of generators, C^p = suffixes of generators,
    C^s = prefixes of generators; gap size 0 with periodic gluing.
    """
    concatenation = concatenation_automaton(gen)
    suffixes = {EMPTY} | {g[i:] for g in gen.generators for i in range(len(g))}
    prefixes = {EMPTY} | {g[:i] for g in gen.generators for i in range(1, len(g) + 1)}

    def in_g(w: Word) -> bool:
        state = concatenation.run(w)
        return state is not None and BOUNDARY in state

    return Decomposition(
        cp=lambda w: w in suffixes,
        g=in_g,
        cs=lambda w: w in prefixes,
        t=0,
        per_flag=True,
        tau_of_M=lambda M: tau_table(gen, M).tau,
        label=f"coded:{len(gen.generators)} generators",
        g_automaton=concatenation,
        g_accepting=lambda state: BOUNDARY in state,
        cp_words=lambda n: frozenset([EMPTY]) if n == 0 else generator_suffixes(gen, n),
        cs_words=lambda n: frozenset([EMPTY]) if n == 0 else generator_prefixes(gen, n),
    )


def cn_growth_report(gen: GeneratorSet, N: int, language: Optional[LanguageOracle] = None) -> CheckRecord:
    """
    Compare the growth of c_n with the growth of the language.

    c_n is only meaningful up to the longest generator. For truncated
    families the c_n rates are lower bounds on that range; for a complete
    finite list c_n vanishes beyond it, so c_n is bounded.

    Verdicts: evidence-for-case-2 when the trailing c_n rate is below the
    zero-rate threshold (or c_n is eventually 0), evidence-for-case-1 when
    the language rate exceeds the c_n rate by more than the margin
    threshold, inconclusive otherwise.
    """
    language = language or coded_oracle(gen)
    counts = count_layers(language, N)
    language_growth = growth_estimate(counts)

    reach = min(N, gen.max_len)
    cn = [coded_cn(gen, n) for n in range(1, reach + 1)]
    cn_growth = growth_estimate(cn)

    eventually_zero = not gen.truncated and gen.max_len < N
    margin = language_growth.limsup_proxy - max(cn_growth.limsup_proxy, 0.0)
    if eventually_zero or cn_growth.limsup_proxy < Config.ZERO_RATE_THRESHOLD:
        case = CASE_2
    elif margin > Config.MARGIN_THRESHOLD:
        case = CASE_1
    else:
        case = CASE_NONE

    notes = []
    if gen.truncated:
        notes.append(f"c_n from generators truncated at length {gen.truncation}; rates are lower bounds")
    if eventually_zero:
        notes.append(f"finite generator list: c_n = 0 for n > {gen.max_len}")

    return CheckRecord(
        name="cn-growth",
        depth=N,
        values={
            "cn": cn,
            "cn_rates": list(cn_growth.rates),
            "language_counts": list(counts),
            "language_rates": list(language_growth.rates),
            "cn_proxy": cn_growth.limsup_proxy,
            "language_proxy": language_growth.limsup_proxy,
            "margin": margin,
            "case": case,
            "lower_bound": gen.truncated,
        },
        verdict=EVIDENCE if case != CASE_NONE else INCONCLUSIVE,
        notes=notes,
    )
