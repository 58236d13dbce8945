import math

import pytest

from language.builtin import full_shift, golden_mean_sft
from language.engine import (
    check_language_axioms,
    count_dp,
    count_ending,
    count_layers,
    enumerate_words,
    growth_estimate,
)
from language.oracle import FunctionAutomaton, LanguageOracle, repeats_admissibly
from reports.report import FAIL, PASS
from utils.errors import AutomatonMissing, BudgetExceeded
from words.word import Alphabet, EMPTY


def fibonacci_shifted(N):
    """F_{n+2} for n = 1..N."""
    values = [2, 3]
    while len(values) < N:
        values.append(values[-1] + values[-2])
    return values[:N]


def test_enumerate_golden_sft():
    golden = golden_mean_sft()
    assert enumerate_words(golden, 0) == [EMPTY]
    assert enumerate_words(golden, 3) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]


def test_counts_are_fibonacci():
    assert count_layers(golden_mean_sft(), 25) == fibonacci_shifted(25)
    assert count_dp(golden_mean_sft(), 20) == 17711


def test_dp_matches_enumeration(contains_only):
    golden = golden_mean_sft()
    bare = contains_only(golden)
    for n in range(1, 11):
        assert count_dp(golden, n) == len(enumerate_words(bare, n))


def test_full_shift_counts():
    assert count_layers(full_shift(3), 5) == [3, 9, 27, 81, 243]


def test_enumeration_budget(contains_only):
    with pytest.raises(BudgetExceeded):
        enumerate_words(contains_only(full_shift(2)), 5, budget=10)


def test_counting_without_automaton(contains_only):
    with pytest.raises(AutomatonMissing):
        count_layers(contains_only(golden_mean_sft()), 3, require_automaton=True)
    assert count_layers(contains_only(golden_mean_sft()), 4) == [2, 3, 5, 8]


def test_growth_estimate_window():
    estimate = growth_estimate([2, 3, 5, 8, 13, 21])
    assert estimate.window == (5, 6)
    assert estimate.limsup_proxy == pytest.approx(max(math.log(13) / 5, math.log(21) / 6))
    assert estimate.rates[0] == pytest.approx(math.log(2))


def test_growth_estimate_zero_counts():
    estimate = growth_estimate([1, 0, 0])
    assert estimate.zero_counts == [2, 3]
    assert estimate.rates[1] == float("-inf")
    assert estimate.limsup_proxy == float("-inf")


def test_language_axioms_pass_on_golden():
    assert check_language_axioms(golden_mean_sft(), 8).verdict == PASS


def test_language_axioms_catch_dead_ends():
    truncated = LanguageOracle(alphabet=Alphabet(2), contains_fn=lambda w: len(w) <= 3)
    record = check_language_axioms(truncated, 4)
    assert record.verdict == FAIL
    assert len(record.values["dead_ends"]) == 8


def test_language_axioms_catch_closure_violations():
    broken = LanguageOracle(alphabet=Alphabet(2), contains_fn=lambda w: w != (1,))
    assert check_language_axioms(broken, 2).verdict == FAIL


def test_contains_rejects_foreign_symbols():
    assert not golden_mean_sft().contains((0, 2))


def test_repeats_admissibly():
    automaton = golden_mean_sft().automaton
    assert repeats_admissibly(automaton, (0, 1)) is True
    assert repeats_admissibly(automaton, (1,)) is False
    assert repeats_admissibly(automaton, (1, 0, 1)) is False
    assert repeats_admissibly(automaton, EMPTY) is False


def test_repeats_admissibly_gives_up_on_unbounded_automata():
    counter = FunctionAutomaton(0, 2, lambda state, symbol: state + 1)
    assert repeats_admissibly(counter, (0,), limit=50) is None


def test_explore_respects_state_limit():
    counter = FunctionAutomaton(0, 2, lambda state, symbol: state + 1)
    with pytest.raises(BudgetExceeded):
        counter.explore(limit=10)


def test_count_ending():
    automaton = golden_mean_sft().automaton
    # words of length 4 ending in 1
    assert count_ending(automaton, 4, lambda state: state == 1) == 3
