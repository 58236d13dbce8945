import itertools

import pytest

from language.engine import count_layers
from reports.report import EVIDENCE
from systems.beta import beta_generators
from systems.coded import (
    CASE_2,
    build_generator_set,
    cn_growth_report,
    coded_cn,
    coded_contains,
    coded_decomposition,
    coded_parse,
    dump_generators,
    load_generators,
    tau_table,
)
from systems.registry import build_system
from utils.errors import ValidationError
from words.word import parse_word


@pytest.fixture
def gen():
    """Generators 0 and 100: 1s separated by at least two 0s."""
    return build_generator_set([parse_word("100"), parse_word("0")])


def test_generators_sorted_by_length(gen):
    assert gen.generators == ((0,), (1, 0, 0))
    assert gen.alphabet.size == 2
    assert gen.max_len == 3


@pytest.mark.parametrize("text,expected", [
    ("1001", True),
    ("0100100", True),
    ("00", True),
    ("101", False),
    ("11", False),
])
def test_membership(gen, text, expected):
    assert coded_contains(gen, parse_word(text)) is expected


@pytest.mark.parametrize("text", ["0100100", "10", "00100"])
def test_parse_reconstructs_word(gen, text):
    w = parse_word(text)
    parsed = coded_parse(gen, w)
    assert parsed is not None
    if parsed.inner is None:
        assert parsed.head + sum(parsed.body, ()) + parsed.tail == w
        assert all(g in gen.generators for g in parsed.body)


def test_parse_rejects_outside_words(gen):
    assert coded_parse(gen, parse_word("101")) is None


def test_cn_and_tau(gen):
    assert [coded_cn(gen, n) for n in range(1, 5)] == [2, 2, 1, 0]
    table = tau_table(gen, 1)
    assert (table.tau_p, table.tau_s, table.tau) == (1, 3, 4)


def test_decomposition(gen):
    d = coded_decomposition(gen)
    assert d.g(parse_word("1000"))
    assert not d.g(parse_word("0010"))
    assert d.cp(parse_word("00"))
    assert d.cs(parse_word("10"))
    assert d.tau_of_M(1) == 4


def test_cn_growth_finite_list(gen):
    record = cn_growth_report(gen, 12)
    assert record.values["case"] == CASE_2
    assert record.verdict == EVIDENCE
    assert record.values["cn"] == [2, 2, 1]


def test_load_and_dump_generators(gen, tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# loops\n0\n100  # long one\n\n")
    assert load_generators(str(path)).generators == gen.generators

    copy = tmp_path / "copy.txt"
    dump_generators(gen, str(copy))
    assert load_generators(str(copy)).generators == gen.generators


def test_load_generators_errors(tmp_path):
    with pytest.raises(ValidationError):
        load_generators(str(tmp_path / "missing.txt"))
    bad = tmp_path / "bad.txt"
    bad.write_text("01\n0x1\n")
    with pytest.raises(ValidationError):
        load_generators(str(bad))


@pytest.mark.parametrize("words", [[], [()]])
def test_invalid_generator_sets(words):
    with pytest.raises(ValidationError):
        build_generator_set(words)


def test_orbit_system():
    system = build_system("orbit:0101")
    assert system.kind == "orbit"
    assert system.source.generators == ((0, 1),)
    assert count_layers(system.language, 8) == [2] * 8
    assert system.exact_entropy == 0.0


def test_coded_view_of_golden_beta(golden):
    # loops up to length 12 already realize every alternating run of a length-10 word
    gen = build_generator_set(beta_generators(golden.source, 12), 2, truncated=True, truncation=12)
    for n in range(1, 11):
        for w in itertools.product((0, 1), repeat=n):
            assert coded_contains(gen, w) == golden.language.contains(w), w
