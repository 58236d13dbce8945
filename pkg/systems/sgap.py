"""
S-gap shifts.

Binary sequences in which every run of 0s between two consecutive 1s has a
length in S. Two boundary policies are supported:

literal  - runs before the first 1 and after the last 1 are unconstrained
           and all-zero words are always admissible;
bounded  - for finite S, boundary runs (and all-zero words) are at most
           max S long, which is the language of the two-sided subshift.

For infinite rules the two policies coincide.
"""

from dataclasses import dataclass, replace
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

import mpmath

from decomposition.core import Decomposition
from language.engine import enumerate_words
from language.oracle import Automaton, LanguageOracle
from utils.errors import ValidationError
from words.word import Alphabet, EMPTY, Word
from words.rules import validate_nonnegative
import logging

logger = logging.getLogger(__name__)

LITERAL = "literal"
BOUNDED = "bounded"
POLICIES = (LITERAL, BOUNDED)

RULES: Dict[str, Callable[[int], bool]] = {
    "all": lambda n: n >= 0,
    "pow2": lambda n: n > 0 and n & (n - 1) == 0,
    "odd": lambda n: n % 2 == 1,
    "even": lambda n: n % 2 == 0,
}


@dataclass(frozen=True)
class SGapShift:
    """
    An S-gap shift.

    Attributes:
        elements: Sorted finite part of S (the whole of S when rule is None)
        rule: Name of an infinite rule in RULES, or None for finite S
        policy: literal | bounded
    """

    elements: Tuple[int, ...]
    rule: Optional[str] = None
    policy: str = LITERAL

    def __post_init__(self):
        if not self.elements:
            raise ValidationError("S must be nonempty")
        for n in self.elements:
            validate_nonnegative("gap", n)
        if self.rule is not None and self.rule not in RULES:
            raise ValidationError(f"Unknown S rule {self.rule!r}; expected one of {', '.join(RULES)}")
        if self.policy not in POLICIES:
            raise ValidationError(f"Unknown boundary policy {self.policy!r}")

    @property
    def infinite(self) -> bool:
        return self.rule is not None

    @property
    def max_gap(self) -> int:
        return self.elements[-1]

    @property
    def bounded_boundary(self) -> bool:
        return self.policy == BOUNDED and not self.infinite

    def in_s(self, n: int) -> bool:
        if self.rule is not None:
            return RULES[self.rule](n)
        return n in self._element_set

    @property
    def _element_set(self) -> FrozenSet[int]:
        return frozenset(self.elements)

    @property
    def label(self) -> str:
        body = f"{self.rule}@{self.max_gap}" if self.rule else ",".join(str(n) for n in self.elements)
        return f"sgap:{body}" + (f";{BOUNDED}" if self.policy == BOUNDED else "")

    def params(self) -> Dict[str, object]:
        return {"family": "sgap", "elements": list(self.elements), "rule": self.rule, "policy": self.policy}


def build_sgap_shift(elements=None, rule: Optional[str] = None, max_gap: int = 64,
                     policy: str = LITERAL) -> SGapShift:
    """
    Build an S-gap shift from explicit elements or a named rule.

    Args:
        elements: Finite S
        rule: Infinite rule name (all, pow2, odd, even); elements are then
              the rule's members up to max_gap
        max_gap: Truncation used for generators and entropy seeds
        policy: literal | bounded
    """
    if rule is not None:
        if rule not in RULES:
            raise ValidationError(f"Unknown S rule {rule!r}; expected one of {', '.join(RULES)}")
        elements = [n for n in range(max_gap + 1) if RULES[rule](n)]
    if not elements:
        raise ValidationError("S must be nonempty")
    return SGapShift(tuple(sorted(set(elements))), rule, policy)


def _runs(w: Word) -> Tuple[int, List[int], int]:
    """(leading zeros, internal gaps, trailing zeros); gaps empty when w has at most one 1."""
    ones = [i for i, symbol in enumerate(w) if symbol == 1]
    if not ones:
        return len(w), [], len(w)
    gaps = [b - a - 1 for a, b in zip(ones, ones[1:])]
    return ones[0], gaps, len(w) - ones[-1] - 1


def sgap_contains(shift: SGapShift, w: Word) -> bool:
    """
    Membership in the S-gap language.

    Every maximal zero run strictly between two 1s must have length in S.
    Boundary runs follow the shift's policy.
    """
    if any(symbol not in (0, 1) for symbol in w):
        return False
    lead, gaps, trail = _runs(w)
    if not all(shift.in_s(gap) for gap in gaps):
        return False
    if shift.bounded_boundary and (lead > shift.max_gap or trail > shift.max_gap):
        return False
    return True


class SGapAutomaton(Automaton):
    """
    Follower automaton tracking the current zero run.

    States are ("L", r) before the first 1 and ("G", r) after a 1, where r is
    the length of the current run of 0s. For finite S the run is capped at
    max S + 1 (no further 1 allowed).
    """

    def __init__(self, shift: SGapShift):
        super().__init__(("L", 0), 2)
        self.shift = shift

    def _transition(self, state, symbol):
        kind, r = state
        shift = self.shift
        if symbol == 1:
            if kind == "L":
                return ("G", 0)
            if r <= shift.max_gap or shift.infinite:
                return ("G", 0) if shift.in_s(r) else None
            return None
        if kind == "L":
            if shift.bounded_boundary:
                return ("L", r + 1) if r + 1 <= shift.max_gap else None
            return ("L", 0)
        if shift.infinite:
            return ("G", r + 1)
        if shift.bounded_boundary:
            return ("G", r + 1) if r + 1 <= shift.max_gap else None
        return ("G", min(r + 1, shift.max_gap + 1))


def sgap_periodic_admissible(shift: SGapShift, w: Word) -> Optional[bool]:
    """
    Whether w^inf lies in the shift: every cyclic gap of w must be in S.

    0^inf belongs to the shift only when S is infinite.
    """
    if not w:
        return True
    ones = [i for i, symbol in enumerate(w) if symbol == 1]
    if not ones:
        return shift.infinite
    n = len(w)
    gaps = [(ones[(k + 1) % len(ones)] - ones[k] - 1) % n for k in range(len(ones))]
    if len(ones) == 1:
        gaps = [n - 1]
    return all(shift.in_s(gap) for gap in gaps)


def two_sided(shift: SGapShift) -> SGapShift:
    """
    The shift whose language is the subword closure of the bi-infinite rule.

    For finite S that is the bounded policy; infinite rules are unchanged.
    """
    if shift.infinite or shift.policy == BOUNDED:
        return shift
    return replace(shift, policy=BOUNDED)


def sgap_oracle(shift: SGapShift) -> LanguageOracle:
    return LanguageOracle(
        alphabet=Alphabet(2),
        contains_fn=lambda w: sgap_contains(shift, w),
        automaton=SGapAutomaton(shift),
        name=shift.label,
        params=shift.params(),
        periodic=lambda w: sgap_periodic_admissible(shift, w),
    )


@dataclass(frozen=True)
class SGapEntropy:
    """Root lambda of sum_{n in S} x^(-n-1) = 1 with its diagnostics."""

    lam: float
    log_lambda: float
    residual: float
    truncation: int
    iterations: int


def _gap_sum(shift: SGapShift, x: mpmath.mpf, top: int) -> mpmath.mpf:
    return mpmath.fsum(x ** (-n - 1) for n in range(top + 1) if shift.in_s(n))


def sgap_entropy(shift: SGapShift, tol: float = 1e-12) -> SGapEntropy:
    """
    Entropy log(lambda) of an S-gap shift by bisection.

    x -> sum_{n in S} x^(-n-1) is strictly decreasing on (1, 2] and the
    root lies there. |S| = 1 gives lambda = 1. Infinite rules are truncated
    at T, doubling T until the tail bound lambda_T^-T / (lambda_T - 1) drops
    below tol; the residual is computed over the final truncation.

    Raises:
        ValidationError: If tol is not positive
    """
    if not tol > 0:
        raise ValidationError(f"Tolerance must be > 0, got {tol}")

    if not shift.infinite and len(shift.elements) == 1:
        return SGapEntropy(1.0, 0.0, 0.0, shift.max_gap, 0)

    target = min(tol * 1e-3, 1e-14)
    top = shift.max_gap if not shift.infinite else max(16, shift.max_gap)
    with mpmath.workdps(40):
        while True:
            lo, hi = mpmath.mpf(1), mpmath.mpf(2)
            iterations = 0
            while hi - lo > target and iterations < 400:
                mid = (lo + hi) / 2
                if _gap_sum(shift, mid, top) > 1:
                    lo = mid
                else:
                    hi = mid
                iterations += 1
            lam = (lo + hi) / 2
            if not shift.infinite:
                break
            tail = lam ** (-top) / (lam - 1)
            if tail < tol or top >= 1 << 14:
                break
            top *= 2

        residual = abs(1 - _gap_sum(shift, lam, top))
        logger.debug(f"S-gap entropy for {shift.label}: lambda={mpmath.nstr(lam, 15)} truncation={top}")
        return SGapEntropy(float(lam), float(mpmath.log(lam)), float(residual), top, iterations)


def sgap_generators(shift: SGapShift, max_len: Optional[int] = None) -> List[Word]:
    """Generators 0^s 1 for s in S with s + 1 <= max_len (all finite elements by default)."""
    top = shift.max_gap if max_len is None else max_len - 1
    if shift.infinite:
        gaps = [n for n in range(top + 1) if shift.in_s(n)]
    else:
        gaps = [n for n in shift.elements if n <= top]
    return [(0,) * s + (1,) for s in gaps]


def _is_g_block(shift: SGapShift, w: Word) -> bool:
    """Concatenation of blocks 0^{n_i} 1 with every n_i in S (greedy run scan)."""
    if not w:
        return True
    if w[-1] != 1:
        return False
    run = 0
    for symbol in w:
        if symbol == 0:
            run += 1
        else:
            if not shift.in_s(run):
                return False
            run = 0
    return True


class SGapGAutomaton(Automaton):
    """Automaton for G: state r is the zero run since the last block end."""

    def __init__(self, shift: SGapShift):
        super().__init__(0, 2)
        self.shift = shift

    def _transition(self, r, symbol):
        if symbol == 1:
            return 0 if self.shift.in_s(r) else None
        if not self.shift.infinite and r + 1 > self.shift.max_gap:
            return None
        return r + 1


def sgap_decomposition(shift: SGapShift) -> Decomposition:
    """
    Canonical decomposition of an S-gap shift.

    C^p = {0^n 1 : n not in S}, G = blocks 0^{n_1} 1 ... 0^{n_k} 1 with every
    n_i in S, C^s = {0^n}; gap size 0 with periodic gluing.
    """
    language = sgap_oracle(shift)

    def in_cp(w: Word) -> bool:
        if not w:
            return True
        return w[-1] == 1 and all(symbol == 0 for symbol in w[:-1]) and not shift.in_s(len(w) - 1)

    def in_cs(w: Word) -> bool:
        return all(symbol == 0 for symbol in w)

    def in_g(w: Word) -> bool:
        return _is_g_block(shift, w) and language.contains(w)

    def cp_words(n: int) -> FrozenSet[Word]:
        if n == 0:
            return frozenset([EMPTY])
        return frozenset([(0,) * (n - 1) + (1,)]) if not shift.in_s(n - 1) else frozenset()

    return Decomposition(
        cp=in_cp,
        g=in_g,
        cs=in_cs,
        t=0,
        per_flag=True,
        label=shift.label,
        g_automaton=SGapGAutomaton(shift),
        g_accepting=lambda r: r == 0,
        cp_words=cp_words,
        cs_words=lambda n: frozenset([(0,) * n]),
    )


@dataclass(frozen=True)
class MinGapResult:
    """Shortest connecting word found by min_gap."""

    t: Optional[int]
    word: Optional[Word]
    t_max: int
    mode: str = "exact"

    @property
    def found(self) -> bool:
        return self.t is not None


def min_gap(language: LanguageOracle, u: Word, w: Word, t_max: int, mode: str = "exact") -> MinGapResult:
    """
    Least t such that u v w is admissible for some v in L_t.

    Exhaustive search over v by increasing length. In "weak" mode the result
    is the same number; the mode is recorded so callers can compare it with a
    (W)-specification bound (length at most t rather than exactly t).

    Returns:
        MinGapResult with t None when no v of length <= t_max works
    """
    validate_nonnegative("t_max", t_max)
    if mode not in ("exact", "weak"):
        raise ValidationError(f"Unknown min_gap mode {mode!r}")
    for t in range(t_max + 1):
        for v in enumerate_words(language, t):
            if language.contains(u + v + w):
                return MinGapResult(t, v, t_max, mode)
    return MinGapResult(None, None, t_max, mode)
