import pytest

from language.builtin import golden_mean_sft
from utils.errors import AlphabetMismatch, ValidationError
from words.algebra import concat_set
from words.word import (
    Alphabet,
    EMPTY,
    Ordering,
    format_word,
    is_primitive,
    least_period,
    lex_compare,
    lex_leq,
    parse_word,
    prefix,
    rotations,
    suffix,
)


def test_parse_and_format():
    assert parse_word("0101") == (0, 1, 0, 1)
    assert parse_word("1.0.11") == (1, 0, 11)
    assert parse_word("ε") == EMPTY
    assert parse_word("") == EMPTY
    assert format_word((1, 0, 11)) == "1.0.11"
    assert format_word((1, 0, 1)) == "101"
    assert format_word(EMPTY) == ""


def test_parse_rejects_garbage():
    with pytest.raises(ValidationError):
        parse_word("01a")
    with pytest.raises(AlphabetMismatch):
        parse_word("012", Alphabet(2))


def test_alphabet_bounds():
    with pytest.raises(ValidationError):
        Alphabet(1)
    with pytest.raises(ValidationError):
        Alphabet(256)
    assert list(Alphabet(2).words(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_lex_compare_is_prefix_tolerant():
    assert lex_compare((0, 1), (0, 1, 1)) is Ordering.PREFIX
    assert lex_compare((1, 0), (0, 1)) is Ordering.GREATER
    assert lex_compare((0, 1), (1,)) is Ordering.LESS
    assert lex_compare((1, 0), (1, 0)) is Ordering.EQUAL
    assert lex_leq((1,), (1, 0, 1))
    assert not lex_leq((1, 1), (1, 0))


def test_cuts():
    w = (1, 0, 1, 1)
    assert prefix(w, 2) == (1, 0)
    assert suffix(w, 3) == (0, 1, 1)
    assert prefix(w, 0) == EMPTY
    with pytest.raises(ValidationError):
        prefix(w, 5)
    with pytest.raises(ValidationError):
        suffix(w, -1)


def test_periods_and_rotations():
    assert least_period((0, 1, 0, 1)) == 2
    assert least_period((0, 1, 0)) == 3
    assert is_primitive((0, 1, 0))
    assert not is_primitive((0, 0))
    assert not is_primitive(EMPTY)
    assert rotations((0, 0, 1)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_concat_set_keeps_admissible_words_only():
    golden = golden_mean_sft()
    result = concat_set({(0,), (1,)}, {(1,), (0,)}, golden)
    assert result == {(0, 1), (0, 0), (1, 0)}
    assert concat_set({(1,)}, {(1,)}, golden) == frozenset()
