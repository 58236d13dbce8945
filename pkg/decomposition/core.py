"""
Decompositions L = C^p G C^s.

A Decomposition holds three membership oracles plus the gap size t of the
specification property claimed for G. Counting helpers use the optional
word generators and G automaton when a system provides them and fall back
to filtering the enumerated language otherwise.
"""

from dataclasses import dataclass
from typing import Any, Callable, FrozenSet, List, NamedTuple, Optional

from language.engine import count_ending, enumerate_words
from language.oracle import Automaton, LanguageOracle
from utils.errors import ValidationError
from words.word import EMPTY, Word
from words.rules import validate_nonnegative

Oracle = Callable[[Word], bool]


@dataclass(frozen=True, eq=False)
class Decomposition:
    """
    The triple (C^p, G, C^s) with gap size t.

    Attributes:
        cp, g, cs: Membership oracles (each accepts the empty word)
        t: Gap size of the specification property on G
        per_flag: Whether periodic gluing (Per) is claimed
        tau_of_M: Optional bound M -> tau for the extension condition
        label: Name used in reports
        g_automaton, g_accepting: Optional DP presentation of G
        cp_words, cs_words: Optional n -> words of C^p_n / C^s_n
    """

    cp: Oracle
    g: Oracle
    cs: Oracle
    t: int = 0
    per_flag: bool = False
    tau_of_M: Optional[Callable[[int], Optional[int]]] = None
    label: str = ""
    g_automaton: Optional[Automaton] = None
    g_accepting: Optional[Callable[[Any], bool]] = None
    cp_words: Optional[Callable[[int], FrozenSet[Word]]] = None
    cs_words: Optional[Callable[[int], FrozenSet[Word]]] = None

    def __post_init__(self):
        validate_nonnegative("t", self.t)
        for name in ("cp", "g", "cs"):
            if not getattr(self, name)(EMPTY):
                raise ValidationError(f"Decomposition {self.label or ''} must accept ε in {name}")


class Parse(NamedTuple):
    """One split w = u v s with u in C^p, v in G, s in C^s."""

    prefix: Word
    core: Word
    suffix: Word

    @property
    def boundary(self) -> int:
        return len(self.prefix) + len(self.suffix)


def parse(d: Decomposition, w: Word) -> List[Parse]:
    """
    All parses of w, ordered by |u| + |s| then |u|.

    Exhaustive over the O(|w|^2) split points; an empty result means w is
    not covered by the decomposition.
    """
    n = len(w)
    found = []
    for i in range(n + 1):
        if not d.cp(w[:i]):
            continue
        for j in range(i, n + 1):
            if d.cs(w[j:]) and d.g(w[i:j]):
                found.append(Parse(w[:i], w[i:j], w[j:]))
    found.sort(key=lambda p: (p.boundary, len(p.prefix)))
    return found


def min_boundary(d: Decomposition, w: Word, limit: Optional[int] = None) -> Optional[int]:
    """
    Smallest M such that w lies in G(M), i.e. min over parses of max(|u|, |s|).

    Searches M = 0, 1, ... up to limit (|w| by default); None if w has no parse.
    """
    n = len(w)
    top = n if limit is None else min(limit, n)
    for M in range(top + 1):
        for i in range(min(M, n) + 1):
            for j in range(min(M, n - i) + 1):
                if max(i, j) != M:
                    continue
                if d.cp(w[:i]) and d.cs(w[n - j:]) and d.g(w[i:n - j]):
                    return M
    return None


class GMFilter:
    """Membership in G(M): some parse with |u| <= M and |s| <= M."""

    def __init__(self, d: Decomposition, M: int):
        validate_nonnegative("M", M)
        self.d = d
        self.M = M

    def __call__(self, w: Word) -> bool:
        return self.contains(w)

    def contains(self, w: Word) -> bool:
        return min_boundary(self.d, w, self.M) is not None


def g_words(d: Decomposition, language: LanguageOracle, n: int) -> List[Word]:
    """G_n in lexicographic order."""
    if n == 0:
        return [EMPTY]
    return [w for w in enumerate_words(language, n) if d.g(w)]


def count_g(d: Decomposition, language: LanguageOracle, n: int) -> int:
    """#G_n, by DP when the decomposition carries a G automaton."""
    if d.g_automaton is not None and d.g_accepting is not None:
        return count_ending(d.g_automaton, n, d.g_accepting)
    return len(g_words(d, language, n))


def prefix_words(d: Decomposition, language: LanguageOracle, n: int) -> FrozenSet[Word]:
    """C^p_n (restricted to the language)."""
    if d.cp_words is not None:
        return frozenset(w for w in d.cp_words(n) if language.contains(w))
    return frozenset(w for w in enumerate_words(language, n) if d.cp(w))


def suffix_words(d: Decomposition, language: LanguageOracle, n: int) -> FrozenSet[Word]:
    """C^s_n (restricted to the language)."""
    if d.cs_words is not None:
        return frozenset(w for w in d.cs_words(n) if language.contains(w))
    return frozenset(w for w in enumerate_words(language, n) if d.cs(w))


def boundary_count(d: Decomposition, language: LanguageOracle, n: int) -> int:
    """#(C^p union C^s)_n."""
    return len(prefix_words(d, language, n) | suffix_words(d, language, n))
