import pytest

from language.engine import count_layers
from systems.beta import (
    beta_contains,
    beta_digits,
    beta_finite_automaton,
    beta_g_count,
    beta_generators,
    beta_lemma_counts,
    beta_oracle,
    beta_periodic_admissible,
    build_beta_shift,
    expansion_value,
    shift_dominance_violations,
    specification_flag,
)
from systems.numbers import parse_beta
from utils.errors import DigitCacheError, ValidationError

PLASTIC = "root(x^3-x-1, near=1.3)"


def test_integer_base_expansion():
    expansion = beta_digits("2", 8)
    assert expansion.digits == (1,) * 8
    assert expansion.periodic_tail == (0, 1)
    assert expansion.greedy_finite


def test_golden_expansion():
    expansion = beta_digits("golden", 10)
    assert expansion.digits == (1, 0) * 5
    assert expansion.periodic_tail == (0, 2)
    assert expansion.greedy_finite


def test_rational_base_expansion():
    expansion = beta_digits("1.8", 6)
    assert expansion.digits == (1, 1, 0, 1, 0, 1)
    assert expansion.periodic_tail is None
    assert not expansion.greedy_finite


def test_plastic_root_expansion():
    beta = parse_beta(PLASTIC)
    assert float(beta) == pytest.approx(1.324717957244746, abs=1e-12)
    expansion = beta_digits(beta, 10)
    assert expansion.digits == (1, 0, 0, 0, 0) * 2
    assert expansion.periodic_tail == (0, 5)


@pytest.mark.parametrize("text", ["2", "golden", "1.8"])
def test_expansion_value_close_to_one(text):
    shift = build_beta_shift(text, 64)
    value = expansion_value(shift.beta, shift.digits)
    assert 1 - 2 * float(shift.beta) ** -64 - 1e-12 <= value <= 1 + 1e-12
    assert shift_dominance_violations(shift.digits) == []


@pytest.mark.parametrize("text", ["", "1", "0.5", "abc", "root(x^2-, near=1)"])
def test_parse_beta_rejects(text):
    with pytest.raises(ValidationError):
        parse_beta(text)


def test_membership_golden():
    shift = build_beta_shift("golden", 16)
    assert beta_contains(shift, (1, 0, 1, 0, 0))
    assert not beta_contains(shift, (0, 1, 1))
    assert not beta_contains(shift, (2,))


def test_membership_needs_digits():
    shift = build_beta_shift("1.8", 10)
    with pytest.raises(DigitCacheError):
        beta_contains(shift, (0,) * 11)


def test_periodic_tail_extends_membership():
    shift = build_beta_shift("golden", 4)
    assert beta_contains(shift, (1, 0) * 10)
    assert shift.digit(9) == 1


def test_lemma_counts_match_dp():
    shift = build_beta_shift("golden", 32)
    g, totals = beta_lemma_counts(shift, 12)
    assert g[:6] == [1, 1, 1, 2, 3, 5]
    assert totals[1:] == count_layers(beta_oracle(shift), 12)
    assert [beta_g_count(shift, n) for n in range(13)] == g


def test_lemma_counts_non_periodic_base():
    shift = build_beta_shift("1.8", 32)
    _, totals = beta_lemma_counts(shift, 10)
    assert totals[1:] == count_layers(beta_oracle(shift), 10)


def test_generators_are_first_return_loops():
    shift = build_beta_shift("golden", 16)
    assert beta_generators(shift, 5) == [(0,), (1, 0, 0), (1, 0, 1, 0, 0)]


def test_specification_flag():
    assert specification_flag(build_beta_shift("golden", 16)) == {
        "bounded_zero_runs": True, "max_zero_run": 1, "certified": True}
    flag = specification_flag(build_beta_shift("1.8", 16))
    assert flag["bounded_zero_runs"] is None
    assert not flag["certified"]


def test_finite_automaton():
    golden = build_beta_shift("golden", 16)
    automaton = beta_finite_automaton(golden)
    assert automaton.accepts((1, 0, 1, 0, 0, 1))
    assert not automaton.accepts((1, 1))
    assert beta_finite_automaton(build_beta_shift("1.8", 16)) is None


def test_periodic_admissibility():
    golden = build_beta_shift("golden", 16)
    assert beta_periodic_admissible(golden, (1, 0))
    assert beta_periodic_admissible(golden, (1, 0, 0))
    assert beta_periodic_admissible(golden, (1,)) is False

    shift = build_beta_shift("1.8", 16)
    assert beta_periodic_admissible(shift, (0,))
    assert beta_periodic_admissible(shift, (1, 1, 0)) is False
