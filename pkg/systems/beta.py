"""
Beta shifts.

w(beta) is the quasi-greedy expansion of 1 in base beta. A word belongs to
the beta shift iff each of its suffixes is lexicographically dominated by the
prefix of w(beta) of the same length. The follower automaton has states
v_1, v_2, ...: from v_i the symbol w_i(beta) moves to v_{i+1}, any smaller
symbol returns to v_1 and larger symbols are rejected.
"""

from dataclasses import dataclass
import math
from typing import Dict, List, Optional, Tuple, Union

import mpmath

from decomposition.core import Decomposition
from language.engine import count_ending
from language.oracle import Automaton, LanguageOracle, TableAutomaton
from systems.numbers import BetaField, BetaNumber, parse_beta
from utils.errors import DigitCacheError, ValidationError
from words.word import Alphabet, Ordering, Word, EMPTY, format_word, lex_compare, rotations
from words.rules import validate_positive
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BetaExpansion:
    """Digits of w(beta) with the shape of the greedy expansion."""

    digits: Tuple[int, ...]
    periodic_tail: Optional[Tuple[int, int]]
    greedy_finite: bool


def beta_digits(beta: Union[BetaNumber, str], N: int) -> BetaExpansion:
    """
    First N digits of w(beta), the quasi-greedy expansion of 1.

    Runs the greedy algorithm x_0 = 1, d_j = floor(beta x_{j-1}),
    x_j = beta x_{j-1} - d_j in exact arithmetic. If x_m = 0 the greedy
    expansion is finite and w(beta) = (d_1 ... d_{m-1} (d_m - 1))^inf.
    If x_j repeats an earlier x_i the expansion is eventually periodic with
    preperiod i and period j - i.

    Raises:
        ValidationError: If beta <= 1 or N < 1
        PrecisionError: If some floor cannot be decided
    """
    if isinstance(beta, str):
        beta = parse_beta(beta)
    validate_positive("N", N)

    field = BetaField(beta)
    min_prec = int(N * math.log2(float(beta))) + 64
    x = field.one()
    seen: Dict[Tuple, int] = {x: 0}
    digits: List[int] = []

    for j in range(1, N + 1):
        y = field.mul_beta(x)
        d = field.floor(y, min_prec)
        x = field.sub_int(y, d)
        digits.append(d)

        if field.is_zero(x):
            block = digits[:-1] + [d - 1]
            full = [block[i % j] for i in range(max(N, j))]
            logger.debug(f"Greedy expansion of 1 in base {beta.spec} is finite at {j}; using quasi-greedy tail")
            return BetaExpansion(tuple(full[:N]), (0, j), True)

        if x in seen:
            start = seen[x]
            period = j - start
            full = list(digits)
            while len(full) < N:
                full.append(full[start + (len(full) - start) % period])
            return BetaExpansion(tuple(full[:N]), (start, period), False)

        seen[x] = j

    return BetaExpansion(tuple(digits), None, False)


def expansion_value(beta: BetaNumber, digits: Tuple[int, ...], prec: int = 256) -> float:
    """sum_j d_j beta^-j over the given digits."""
    with mpmath.workprec(prec):
        b = beta.value(prec)
        return float(mpmath.fsum(d * b ** -(j + 1) for j, d in enumerate(digits)))


def shift_dominance_violations(digits: Tuple[int, ...]) -> List[int]:
    """Shifts k with sigma^k(w) truncated strictly greater than w truncated."""
    N = len(digits)
    return [k for k in range(1, N) if lex_compare(digits[k:], digits[:N - k]) is Ordering.GREATER]


def max_zero_run(digits: Tuple[int, ...]) -> int:
    longest = current = 0
    for d in digits:
        current = current + 1 if d == 0 else 0
        longest = max(longest, current)
    return longest


@dataclass(frozen=True)
class BetaShift:
    """A beta shift with the first digits of w(beta) cached."""

    beta: BetaNumber
    digits: Tuple[int, ...]
    periodic_tail: Optional[Tuple[int, int]] = None
    greedy_finite: bool = False

    @property
    def b(self) -> int:
        """Number of symbols, ceil(beta)."""
        return self.digits[0] + 1

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.b)

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def entropy(self) -> float:
        return self.beta.log

    def digit(self, i: int) -> int:
        """w_i(beta), 1-based; beyond the cache only when the tail is periodic."""
        if i <= len(self.digits):
            return self.digits[i - 1]
        if self.periodic_tail is None:
            raise DigitCacheError(f"Only {len(self.digits)} digits of w(beta) cached for {self.beta.spec}; need {i}")
        start, period = self.periodic_tail
        return self.digits[start + (i - 1 - start) % period]

    def prefix(self, n: int) -> Word:
        if n <= len(self.digits):
            return self.digits[:n]
        return tuple(self.digit(i) for i in range(1, n + 1))

    def with_depth(self, N: int) -> "BetaShift":
        """New shift value with N digits cached."""
        if N <= len(self.digits):
            return self
        return build_beta_shift(self.beta, N)

    def params(self) -> Dict[str, object]:
        return {
            "family": "beta",
            "beta": self.beta.spec,
            "poly": list(self.beta.poly),
            "digits": format_word(self.digits),
            "periodic_tail": list(self.periodic_tail) if self.periodic_tail else None,
        }


def build_beta_shift(beta: Union[BetaNumber, str], N: int = 64) -> BetaShift:
    """Compute N digits of w(beta) and wrap them in a BetaShift."""
    if isinstance(beta, str):
        beta = parse_beta(beta)
    expansion = beta_digits(beta, N)
    shift = BetaShift(beta, expansion.digits, expansion.periodic_tail, expansion.greedy_finite)
    logger.info(f"Built beta shift {beta.spec}: w(beta) = {format_word(shift.digits[:24])}..."
                f" tail={shift.periodic_tail}")
    return shift


def beta_contains(shift: BetaShift, w: Word) -> bool:
    """
    Membership: every suffix of w is dominated by the w(beta) prefix of its length.

    Raises:
        DigitCacheError: If fewer than |w| digits are known
    """
    if len(w) > len(shift.digits) and shift.periodic_tail is None:
        raise DigitCacheError(f"Word of length {len(w)} needs more than {len(shift.digits)} digits")
    reference = shift.prefix(len(w))
    for k in range(len(w)):
        if lex_compare(w[k:], reference[:len(w) - k]) is Ordering.GREATER:
            return False
    return True


class BetaAutomaton(Automaton):
    """Depth-unbounded follower automaton; states are the indices i of v_i."""

    def __init__(self, shift: BetaShift):
        super().__init__(1, shift.b)
        self.shift = shift

    def _transition(self, state: int, symbol: int) -> Optional[int]:
        d = self.shift.digit(state)
        if symbol == d:
            return state + 1
        if symbol < d:
            return 1
        return None


def beta_finite_automaton(shift: BetaShift) -> Optional[TableAutomaton]:
    """
    Finite presentation when w(beta) is eventually periodic.

    With preperiod s and period q, state v_{s+q+1} behaves exactly like
    v_{s+1}, so the two are merged. Returns None without a periodic tail.
    """
    if shift.periodic_tail is None:
        return None
    start, period = shift.periodic_tail
    last = start + period
    table = {}
    for i in range(1, last + 1):
        d = shift.digit(i)
        table[(i, d)] = i + 1 if i < last else start + 1
        for j in range(d):
            table[(i, j)] = 1
    return TableAutomaton(1, shift.b, table)


def beta_periodic_admissible(shift: BetaShift, w: Word, depth: Optional[int] = None) -> Optional[bool]:
    """
    Whether the periodic point w^inf lies in the beta shift.

    Every rotation r of w must satisfy r^inf <= w(beta). With a periodic tail
    the comparison is exact; otherwise rotations that agree with w(beta) on
    all checked digits are undecided and the answer is None.
    """
    if not w:
        return True
    undecided = False
    for r in rotations(w):
        if shift.periodic_tail is not None:
            start, period = shift.periodic_tail
            D = start + len(r) * period // math.gcd(len(r), period)
        else:
            D = min(depth or len(shift.digits), len(shift.digits))
        sequence = tuple(r[i % len(r)] for i in range(D))
        order = lex_compare(sequence, shift.prefix(D))
        if order is Ordering.GREATER:
            return False
        if order is Ordering.EQUAL and shift.periodic_tail is None:
            undecided = True
    return None if undecided else True


def beta_oracle(shift: BetaShift) -> LanguageOracle:
    """Language oracle of the beta shift with its follower automaton."""
    return LanguageOracle(
        alphabet=shift.alphabet,
        contains_fn=lambda w: beta_contains(shift, w),
        automaton=BetaAutomaton(shift),
        name=f"beta:{shift.beta.spec}",
        params=shift.params(),
        periodic=lambda w: beta_periodic_admissible(shift, w),
    )


def beta_decomposition(shift: BetaShift) -> Decomposition:
    """
    Canonical decomposition of the beta shift.

    G: words whose run from v_1 ends at v_1. C^s: exact prefixes of w(beta).
    C^p: only the empty word. Gap size 0 with periodic gluing.
    """
    automaton = BetaAutomaton(shift)

    def in_g(w: Word) -> bool:
        return automaton.run(w) == 1

    def in_cs(w: Word) -> bool:
        return w == shift.prefix(len(w))

    def in_cp(w: Word) -> bool:
        return not w

    return Decomposition(
        cp=in_cp,
        g=in_g,
        cs=in_cs,
        t=0,
        per_flag=True,
        label=f"beta:{shift.beta.spec}",
        g_automaton=automaton,
        g_accepting=lambda state: state == 1,
        cp_words=lambda n: frozenset([EMPTY]) if n == 0 else frozenset(),
        cs_words=lambda n: frozenset([shift.prefix(n)]),
    )


def beta_generators(shift: BetaShift, max_len: int) -> List[Word]:
    """
    First-return loops at v_1 of length at most max_len.

    {w_1 ... w_{i-1} j : w_i >= 1, 0 <= j < w_i}, sorted by length then lex.
    """
    validate_positive("max_len", max_len)
    generators = []
    for i in range(1, max_len + 1):
        d = shift.digit(i)
        for j in range(d):
            generators.append(shift.prefix(i - 1) + (j,))
    return sorted(generators, key=lambda g: (len(g), g))


def beta_lemma_counts(shift: BetaShift, N: int) -> Tuple[List[int], List[int]]:
    """
    Exact #G_n and #L_n for n = 0..N from the first-return recursion.

    g_n = sum_{i=1..n} w_i g_{n-i} (loops of length i number w_i), and since
    #C^s_m = 1 for every m, #L_n = sum_{j<=n} g_j.
    """
    g = [1]
    for n in range(1, N + 1):
        g.append(sum(shift.digit(i) * g[n - i] for i in range(1, n + 1)))
    totals = []
    running = 0
    for value in g:
        running += value
        totals.append(running)
    return g, totals


def beta_g_count(shift: BetaShift, n: int) -> int:
    """#G_n by DP over the follower automaton (cross-check for the recursion)."""
    return count_ending(BetaAutomaton(shift), n, lambda state: state == 1)


def specification_flag(shift: BetaShift) -> Dict[str, object]:
    """
    Bounded zero runs in w(beta), the criterion for specification of the beta shift.

    Exact when the tail is periodic; otherwise the longest run seen so far.
    """
    if shift.periodic_tail is not None:
        start, period = shift.periodic_tail
        tail = shift.prefix(start + 2 * period)
        return {"bounded_zero_runs": any(d != 0 for d in tail[start:]),
                "max_zero_run": max_zero_run(tail), "certified": True}
    return {"bounded_zero_runs": None, "max_zero_run": max_zero_run(shift.digits), "certified": False}
