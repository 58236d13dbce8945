import pytest

from utils.errors import ValidationError
from utils.fingerprint import compute_fingerprint, short_id
from utils.validation import (
    parse_conditions,
    parse_int_list,
    parse_name_list,
    parse_positive_int,
    parse_tolerance,
    sanitize_input,
)


def test_sanitize_input():
    assert sanitize_input("  golden ") == "golden"
    with pytest.raises(ValidationError):
        sanitize_input("x" * 10, max_length=5)


def test_parse_int_list_sorts_and_dedups():
    assert parse_int_list("2, 1,2") == [1, 2]
    with pytest.raises(ValidationError):
        parse_int_list("")
    with pytest.raises(ValidationError):
        parse_int_list("1,-2")


def test_parse_positive_int():
    assert parse_positive_int("64", "depth") == 64
    with pytest.raises(ValidationError):
        parse_positive_int("0", "depth")


def test_parse_tolerance():
    assert parse_tolerance("1e-10") == 1e-10
    with pytest.raises(ValidationError):
        parse_tolerance("0")
    with pytest.raises(ValidationError):
        parse_tolerance("tiny")


def test_parse_conditions_canonical_and_ordered():
    assert parse_conditions("iii, I,per,III") == ["III", "I", "Per"]
    assert parse_conditions(None) == []
    with pytest.raises(ValidationError):
        parse_conditions("I,IV")


def test_parse_name_list():
    assert parse_name_list("parse-cover, density,,") == ["parse-cover", "density"]


def test_fingerprint_ignores_key_order():
    a = compute_fingerprint({"family": "sgap", "elements": [1, 2]})
    b = compute_fingerprint({"elements": [1, 2], "family": "sgap"})
    assert a == b
    assert a != compute_fingerprint({"family": "sgap", "elements": [1, 3]})
    assert len(short_id(a)) == 12
