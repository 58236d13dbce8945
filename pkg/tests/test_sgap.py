import math

import pytest

from language.engine import count_layers, enumerate_words
from systems.sgap import (
    BOUNDED,
    LITERAL,
    SGapShift,
    build_sgap_shift,
    min_gap,
    sgap_contains,
    sgap_decomposition,
    sgap_entropy,
    sgap_generators,
    sgap_oracle,
    sgap_periodic_admissible,
)
from utils.errors import ValidationError
from words.word import parse_word

GOLDEN_RATIO = 1.6180339887498949
PLASTIC = 1.324717957244746


def test_boundary_policies():
    literal = build_sgap_shift([1, 2])
    bounded = build_sgap_shift([1, 2], policy=BOUNDED)

    assert sgap_contains(literal, parse_word("0001"))
    assert not sgap_contains(bounded, parse_word("0001"))
    assert sgap_contains(literal, parse_word("0010100"))
    assert sgap_contains(bounded, parse_word("0010100"))
    assert sgap_contains(literal, parse_word("0000000"))
    assert not sgap_contains(bounded, parse_word("000"))


def test_internal_gaps_must_lie_in_s():
    shift = build_sgap_shift([1, 2])
    assert not sgap_contains(shift, parse_word("11"))
    assert not sgap_contains(shift, parse_word("10001"))
    assert not sgap_contains(shift, (2,))


def test_infinite_rule_membership():
    shift = build_sgap_shift(rule="pow2", max_gap=64)
    assert shift.infinite
    assert sgap_contains(shift, parse_word("1" + "0" * 16 + "1"))
    assert not sgap_contains(shift, parse_word("1" + "0" * 12 + "1"))


@pytest.mark.parametrize("elements,expected", [
    ([1, 2], PLASTIC),
    ([0, 1], GOLDEN_RATIO),
    ([3], 1.0),
])
def test_entropy_root(elements, expected):
    result = sgap_entropy(build_sgap_shift(elements), tol=1e-12)
    assert result.lam == pytest.approx(expected, abs=1e-10)
    assert result.residual < 1e-10


def test_entropy_all_gaps_is_full_shift():
    result = sgap_entropy(build_sgap_shift(rule="all", max_gap=64), tol=1e-10)
    assert result.lam == pytest.approx(2.0, abs=1e-8)


def test_entropy_rejects_bad_tolerance():
    with pytest.raises(ValidationError):
        sgap_entropy(build_sgap_shift([1, 2]), tol=0)


def test_min_gap_grows_for_powers_of_two():
    language = sgap_oracle(build_sgap_shift(rule="pow2", max_gap=64))
    gaps = []
    for n in (2, 3, 4):
        u = (1,) + (0,) * (2 ** (n - 1) + 1)
        gaps.append(min_gap(language, u, (1,), 2 ** n).t)
    assert gaps == [1, 3, 7]


def test_min_gap_not_found():
    language = sgap_oracle(build_sgap_shift([1], policy=BOUNDED))
    result = min_gap(language, (1, 1), (1,), 3)
    assert not result.found
    with pytest.raises(ValidationError):
        min_gap(language, (1,), (1,), 3, mode="fast")


def test_generators():
    assert sgap_generators(build_sgap_shift([1, 2])) == [(0, 1), (0, 0, 1)]
    assert sgap_generators(build_sgap_shift(rule="pow2", max_gap=64), 5) == [(0, 1), (0, 0, 1), (0, 0, 0, 0, 1)]


def test_periodic_points():
    finite = build_sgap_shift([1, 2])
    assert sgap_periodic_admissible(finite, (0, 1))
    assert sgap_periodic_admissible(finite, (0, 1, 0, 1))
    assert not sgap_periodic_admissible(finite, (0, 0, 0, 1))
    assert not sgap_periodic_admissible(finite, (0,))
    assert sgap_periodic_admissible(build_sgap_shift(rule="all", max_gap=8), (0,))


@pytest.mark.parametrize("policy", [LITERAL, BOUNDED])
def test_dp_matches_enumeration(policy, contains_only):
    language = sgap_oracle(build_sgap_shift([1, 2], policy=policy))
    expected = [len(enumerate_words(contains_only(language), n)) for n in range(1, 11)]
    assert count_layers(language, 10) == expected


def test_decomposition_pieces():
    d = sgap_decomposition(build_sgap_shift([1, 2], policy=BOUNDED))
    assert d.g(parse_word("01001"))
    assert not d.g(parse_word("010"))
    assert not d.g(parse_word("0001"))
    assert d.cp_words(1) == frozenset([(1,)])
    assert d.cp_words(2) == frozenset()
    assert d.cs(parse_word("00"))


@pytest.mark.parametrize("kwargs", [
    {"elements": []},
    {"rule": "prime"},
    {"elements": [1], "policy": "sometimes"},
])
def test_invalid_shifts(kwargs):
    with pytest.raises(ValidationError):
        build_sgap_shift(**kwargs)


def test_negative_gap_rejected():
    with pytest.raises(ValidationError):
        SGapShift((-1, 2))


def test_growth_rate_at_30(sgap12):
    counts = count_layers(sgap12.language, 30)
    assert abs(math.log(counts[-1]) / 30 - sgap12.exact_entropy) < 0.05
