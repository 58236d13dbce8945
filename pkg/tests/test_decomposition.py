import math

import pytest

from cli.pipeline import dichotomy
from cli.runner import RunConfig
from decomposition.checks import (
    check_condition_I,
    check_condition_II,
    check_condition_III,
    check_counting_bounds,
    check_density,
    check_parse_cover,
    check_specification,
    dichotomy_diagnostic,
)
from decomposition.core import Decomposition, GMFilter, Parse, count_g, min_boundary, parse
from language.engine import count_layers, enumerate_words
from reports.report import EVIDENCE, FAIL, INCONCLUSIVE, PASS
from systems.registry import build_system
from utils.errors import ValidationError
from words.word import parse_word


def test_golden_parses(golden):
    d = golden.decomposition
    assert parse(d, parse_word("010")) == [Parse((), (0,), (1, 0))]
    assert min_boundary(d, parse_word("010")) == 2
    assert min_boundary(d, parse_word("101")) == 3
    assert min_boundary(d, parse_word("1000")) == 0


def test_gm_filter(golden):
    gm = GMFilter(golden.decomposition, 2)
    assert gm(parse_word("010"))
    assert not gm(parse_word("101"))


def test_decomposition_must_accept_empty_word():
    with pytest.raises(ValidationError):
        Decomposition(cp=lambda w: False, g=lambda w: True, cs=lambda w: True)


def test_specification_full_shift(full2):
    record = check_specification(full2.decomposition, full2.language, 4, m=3, t=0, mode="S")
    assert record.verdict == PASS
    assert record.values["pairwise_closure"]


def test_specification_counterexample(golden_sft):
    record = check_specification(golden_sft.decomposition, golden_sft.language, 2, m=2, t=0, mode="S")
    assert record.verdict == FAIL
    assert record.values["counterexample"] == ["1", "1"]


def test_specification_with_gap(golden_sft):
    for mode in ("S", "W", "Per"):
        record = check_specification(golden_sft.decomposition, golden_sft.language, 3, m=2, t=1, mode=mode)
        assert record.verdict == PASS, mode


def test_specification_rejects_unknown_mode(full2):
    with pytest.raises(ValidationError):
        check_specification(full2.decomposition, full2.language, 3, mode="X")


def test_condition_I_golden(golden):
    record = check_condition_I(golden.decomposition, golden.language, 4, m=3)
    assert record.name == "condition-I"
    assert record.values["mode"] == "Per"
    assert record.verdict == PASS


def test_condition_II_golden(golden):
    record = check_condition_II(golden.decomposition, golden.language, 20)
    assert record.verdict == EVIDENCE
    assert record.values["margin"] > 0.4


def test_condition_III_golden(golden):
    record = check_condition_III(golden.decomposition, golden.language, M=2, tau_max=4, n_max=5)
    assert record.verdict == PASS
    assert record.values["tau"] == 2
    assert record.values["failures"] == []


def test_condition_III_never_fails(golden):
    record = check_condition_III(golden.decomposition, golden.language, M=2, tau_max=0, n_max=3)
    assert record.verdict == INCONCLUSIVE
    assert record.values["tau"] is None


def test_parse_cover(golden, sgap12):
    assert check_parse_cover(golden.decomposition, golden.language, 8).verdict == PASS
    assert check_parse_cover(sgap12.decomposition, sgap12.language, 8).verdict == PASS


def test_density(golden):
    record = check_density(golden.decomposition, golden.language, 10, delta=0.1, M_max=6)
    assert record.verdict == PASS
    assert record.values["M"] <= 6
    with pytest.raises(ValidationError):
        check_density(golden.decomposition, golden.language, 10, delta=1.5, M_max=6)


def test_g_counts_by_dp(golden):
    assert [count_g(golden.decomposition, golden.language, n) for n in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]


def test_counting_bounds(golden):
    record = check_counting_bounds(golden.decomposition, golden.language, 14, golden.exact_entropy)
    assert record.verdict == PASS
    assert record.values["lower_violations"] == []
    assert record.values["g_violations"] == []


def test_counting_bounds_detect_violation(golden):
    record = check_counting_bounds(golden.decomposition, golden.language, 10, math.log(2))
    assert record.verdict == FAIL
    assert record.values["lower_violations"]


def test_dichotomy_positive_entropy(golden):
    record = dichotomy_diagnostic(golden.language, golden.decomposition, 10)
    assert record.values["outcome"] == "positive-entropy-evidence"
    assert record.values["witness"] == ["0", "100"]
    assert record.values["entropy_lower_bound"] == pytest.approx(math.log(2) / 4)


def test_dichotomy_single_orbit():
    system = build_system("orbit:0101")
    record = dichotomy_diagnostic(system.language, system.decomposition, 8)
    assert record.verdict == EVIDENCE
    assert record.values["outcome"] == "single-periodic-orbit"
    assert record.values["orbit"] == "01"
    assert record.values["period"] == 2


@pytest.mark.parametrize("name", ["golden", "sgap12_literal"])
def test_specification_without_gap(name, request):
    system = request.getfixturevalue(name)
    record = check_specification(system.decomposition, system.language, 6, m=3, t=0, mode="S")
    assert record.verdict == PASS


@pytest.mark.parametrize("name", ["golden", "sgap12", "sgap12_literal"])
def test_parse_cover_to_depth_12(name, request):
    system = request.getfixturevalue(name)
    assert check_parse_cover(system.decomposition, system.language, 12).verdict == PASS


@pytest.mark.parametrize("name", ["golden", "sgap12"])
def test_condition_III_finite_tau(name, request):
    system = request.getfixturevalue(name)
    record = check_condition_III(system.decomposition, system.language, M=3, tau_max=4, n_max=6)
    assert record.verdict == PASS
    assert record.values["tau"] is not None
    assert record.values["tau"] <= 2


def test_condition_III_literal_boundary_runs(sgap12_literal):
    # 000 is a G(3) word, but no concatenation of 01 and 001 contains it
    d = sgap12_literal.decomposition
    record = check_condition_III(d, sgap12_literal.language, M=3, tau_max=4, n_max=3)
    assert record.verdict == INCONCLUSIVE
    assert "000" in record.values["failures"]


@pytest.mark.parametrize("name", ["golden", "sgap12", "sgap12_literal"])
def test_condition_II_margin(name, request):
    system = request.getfixturevalue(name)
    record = check_condition_II(system.decomposition, system.language, 25)
    assert record.verdict == EVIDENCE
    assert record.values["margin"] >= 0.3


def test_g_filters_nested_and_exhausting(golden):
    d = golden.decomposition
    for n in range(1, 9):
        layer = enumerate_words(golden.language, n)
        previous = set()
        for M in range(0, 7):
            current = {w for w in layer if GMFilter(d, M)(w)}
            assert previous <= current
            previous = current
        assert {w for w in layer if GMFilter(d, n)(w)} == set(layer)


@pytest.mark.parametrize("name", ["golden", "sgap12", "sgap12_literal"])
def test_counts_submultiplicative(name, request):
    system = request.getfixturevalue(name)
    counts = count_layers(system.language, 16)
    for m in range(1, 9):
        for n in range(1, 9):
            assert counts[m + n - 1] <= counts[m - 1] * counts[n - 1]


def test_dichotomy_single_gap_is_one_orbit():
    records = dichotomy(build_system("sgap:0"), RunConfig(system="sgap:0", use_cache=False))
    record = records[0]
    assert record.values["outcome"] == "single-periodic-orbit"
    assert record.values["orbit"] == "1"
    assert record.values["period"] == 1
    assert any("subword closure" in note for note in record.notes)
