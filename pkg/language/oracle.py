"""
Language oracles and follower automata.

A LanguageOracle pairs a pure membership predicate with an optional
deterministic automaton whose accepted-prefix language is the same language.
Automata may be infinite (beta shifts, infinite S-gap rules) as long as each
state has finitely many successors; transitions are computed lazily and
memoized.
"""

from dataclasses import dataclass, field
import threading
from typing import Any, Callable, Dict, Hashable, List, Mapping, Optional, Tuple

from config import Config
from utils.errors import BudgetExceeded
from utils.fingerprint import compute_fingerprint
from words.word import Alphabet, Word
import logging

logger = logging.getLogger(__name__)

State = Hashable


class Automaton:
    """
    Deterministic automaton with a partial transition function.

    Every state is accepting: a word belongs to the language iff its run
    from the initial state never hits a missing transition.
    Subclasses implement _transition(); step() memoizes it.
    """

    def __init__(self, initial: State, alphabet_size: int):
        self.initial = initial
        self.alphabet_size = alphabet_size
        self._steps: Dict[Tuple[State, int], Optional[State]] = {}
        self._lock = threading.Lock()

    def _transition(self, state: State, symbol: int) -> Optional[State]:
        raise NotImplementedError

    def step(self, state: State, symbol: int) -> Optional[State]:
        """Successor of state on symbol, or None when the symbol is rejected."""
        key = (state, symbol)
        try:
            return self._steps[key]
        except KeyError:
            pass
        result = self._transition(state, symbol)
        with self._lock:
            self._steps[key] = result
        return result

    def run(self, word: Word, state: Optional[State] = None) -> Optional[State]:
        """State reached after reading word (from the initial state by default)."""
        current = self.initial if state is None else state
        for symbol in word:
            current = self.step(current, symbol)
            if current is None:
                return None
        return current

    def accepts(self, word: Word) -> bool:
        return self.run(word) is not None

    def successors(self, state: State) -> List[Tuple[int, State]]:
        """(symbol, next state) pairs leaving state."""
        out = []
        for symbol in range(self.alphabet_size):
            target = self.step(state, symbol)
            if target is not None:
                out.append((symbol, target))
        return out

    def explore(self, limit: Optional[int] = None) -> Tuple[List[State], Dict[State, List[Tuple[int, State]]]]:
        """
        Breadth-first exploration of all states reachable from the initial state.

        Args:
            limit: Maximum number of states (defaults to Config.STATE_LIMIT)

        Returns:
            (states in discovery order, adjacency lists)

        Raises:
            BudgetExceeded: If more than limit states are reachable
        """
        limit = limit or Config.STATE_LIMIT
        order = [self.initial]
        seen = {self.initial}
        edges: Dict[State, List[Tuple[int, State]]] = {}
        index = 0
        while index < len(order):
            state = order[index]
            index += 1
            edges[state] = self.successors(state)
            for _, target in edges[state]:
                if target not in seen:
                    if len(order) >= limit:
                        raise BudgetExceeded("automaton exploration", limit)
                    seen.add(target)
                    order.append(target)
        return order, edges


class TableAutomaton(Automaton):
    """Finite automaton given by an explicit transition table."""

    def __init__(self, initial: State, alphabet_size: int, table: Mapping[Tuple[State, int], State]):
        super().__init__(initial, alphabet_size)
        self.table = dict(table)

    def _transition(self, state: State, symbol: int) -> Optional[State]:
        return self.table.get((state, symbol))


class FunctionAutomaton(Automaton):
    """Automaton whose transitions come from a callable."""

    def __init__(self, initial: State, alphabet_size: int, transition: Callable[[State, int], Optional[State]]):
        super().__init__(initial, alphabet_size)
        self._function = transition

    def _transition(self, state: State, symbol: int) -> Optional[State]:
        return self._function(state, symbol)


@dataclass(frozen=True, eq=False)
class LanguageOracle:
    """
    A subshift given by its language.

    Attributes:
        alphabet: Symbols 0..p-1
        contains_fn: Pure membership predicate
        automaton: Optional deterministic follower automaton for the same language
        name: Human-readable label
        params: Defining parameters; their fingerprint keys the layer cache
        periodic: Optional exact test for w^inf belonging to the shift;
                  returns None when undecided
    """

    alphabet: Alphabet
    contains_fn: Callable[[Word], bool]
    automaton: Optional[Automaton] = None
    name: str = ""
    params: Mapping[str, Any] = field(default_factory=dict)
    periodic: Optional[Callable[[Word], Optional[bool]]] = None

    def contains(self, word: Word) -> bool:
        """Membership of a finite word."""
        if any(symbol < 0 or symbol >= self.alphabet.size for symbol in word):
            return False
        return self.contains_fn(word)

    @property
    def family_id(self) -> Optional[str]:
        """Cache key, or None for ad hoc oracles without defining parameters."""
        if not self.params:
            return None
        cached = self.__dict__.get("_family_id")
        if cached is None:
            cached = compute_fingerprint(self.params)
            object.__setattr__(self, "_family_id", cached)
        return cached


def oracle_from_automaton(automaton: Automaton, alphabet: Alphabet, name: str = "",
                          params: Optional[Mapping[str, Any]] = None, **kwargs) -> LanguageOracle:
    """Oracle whose membership is acceptance by the automaton."""
    return LanguageOracle(
        alphabet=alphabet,
        contains_fn=automaton.accepts,
        automaton=automaton,
        name=name,
        params=params or {},
        **kwargs,
    )


def repeats_admissibly(automaton: Automaton, word: Word, limit: Optional[int] = None) -> Optional[bool]:
    """
    Whether every power of word is accepted, i.e. word^inf lies in the shift.

    Follows the state reached after each copy of word until a state repeats.
    Returns None when no repeat shows up within limit copies (infinite
    automata tracking an aperiodic reference).
    """
    if not word:
        return False
    limit = limit or Config.STATE_LIMIT
    state = automaton.initial
    seen = set()
    while state not in seen:
        if len(seen) >= limit:
            return None
        seen.add(state)
        state = automaton.run(word, state)
        if state is None:
            return False
    return True
