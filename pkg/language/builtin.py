"""
Built-in shifts of finite type used as reference systems.
"""

from typing import Optional

from language.oracle import LanguageOracle, TableAutomaton, oracle_from_automaton
from words.word import Alphabet, Word


def full_shift(p: int = 2) -> LanguageOracle:
    """Full p-shift: every word is admissible."""
    alphabet = Alphabet(p)
    automaton = TableAutomaton(0, p, {(0, a): 0 for a in range(p)})
    return oracle_from_automaton(
        automaton,
        alphabet,
        name=f"full:{p}",
        params={"family": "full", "p": p},
        periodic=lambda word: True,
    )


def _golden_periodic(word: Word) -> Optional[bool]:
    n = len(word)
    return all(not (word[i] == 1 and word[(i + 1) % n] == 1) for i in range(n))


def golden_mean_sft() -> LanguageOracle:
    """Binary words without two consecutive 1s."""
    # state = last symbol read (0 also for the empty word)
    automaton = TableAutomaton(0, 2, {(0, 0): 0, (0, 1): 1, (1, 0): 0})
    return oracle_from_automaton(
        automaton,
        Alphabet(2),
        name="golden-sft",
        params={"family": "golden-sft"},
        periodic=_golden_periodic,
    )
