import json

import pytest

from cli.pipeline import homomorphism
from cli.runner import RunConfig
from decomposition.checks import check_condition_III, check_specification
from decomposition.core import g_words, prefix_words
from factor.code import BlockCode, apply_code, dump_code, homomorphism_check, load_code
from factor.transport import FactorLanguage, factor_condition_III, factor_entropy_gap, transport_decomposition
from language.engine import count_layers, enumerate_words
from reports.report import EVIDENCE, PASS
from systems.registry import factor_system
from utils.errors import TableMiss, ValidationError
from words.word import EMPTY, parse_word


def outer_sum(window):
    return (window[0] + window[2]) % 2


@pytest.fixture
def code(golden_sft):
    return BlockCode.from_function(golden_sft.language, 1, outer_sum, 2)


def test_apply_code(full2):
    code = BlockCode.from_function(full2.language, 1, outer_sum, 2)
    assert apply_code(code, parse_word("0110")) == (1, 1)
    assert apply_code(code, parse_word("01")) == EMPTY
    with pytest.raises(ValidationError):
        apply_code(code, (0,))


def test_missing_window():
    code = BlockCode(0, 2, 2, {(0,): 0})
    with pytest.raises(TableMiss):
        apply_code(code, (1,))


@pytest.mark.parametrize("table", [
    {(0, 1): 0},
    {(0, 2, 0): 0},
    {(0, 1, 0): 5},
])
def test_block_code_validation(table):
    with pytest.raises(ValidationError):
        BlockCode(1, 2, 2, table)


def test_homomorphism_identities(full2):
    code = BlockCode.from_function(full2.language, 1, outer_sum, 2)
    for v in enumerate_words(full2.language, 3):
        for w in enumerate_words(full2.language, 2):
            assert homomorphism_check(code, v, w)
    with pytest.raises(ValidationError):
        homomorphism_check(code, (0,), (0, 1))


def test_code_file_round_trip(code, tmp_path):
    path = tmp_path / "code.json"
    dump_code(code, str(path))
    loaded = load_code(str(path))
    assert loaded.k == 1
    assert dict(loaded.table) == dict(code.table)


def test_code_file_errors(tmp_path):
    with pytest.raises(ValidationError):
        load_code(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ValidationError):
        load_code(str(broken))
    partial = tmp_path / "partial.json"
    partial.write_text(json.dumps({"k": 1}))
    with pytest.raises(ValidationError):
        load_code(str(partial))


def test_identity_factor(golden_sft):
    identity = BlockCode(0, 2, 2, {(0,): 0, (1,): 1})
    factor = FactorLanguage(identity, golden_sft.language)
    for n in range(1, 7):
        for w in enumerate_words(golden_sft.language, n):
            assert factor.contains(w)
    assert not factor.contains((1, 1))


def test_factor_language_matches_image(code, golden_sft):
    factor = FactorLanguage(code, golden_sft.language)
    language = factor.oracle()
    for n in range(1, 7):
        assert set(enumerate_words(language, n)) == factor.image_layer(n)


def test_factor_rejects_partial_code(golden_sft):
    partial = BlockCode(1, 2, 2, {(0, 0, 0): 0})
    with pytest.raises(ValidationError):
        FactorLanguage(partial, golden_sft.language)
    wide = BlockCode(0, 3, 2, {(0,): 0, (1,): 1, (2,): 0})
    with pytest.raises(ValidationError):
        FactorLanguage(wide, golden_sft.language)


def test_transported_decomposition(code, golden_sft):
    d = golden_sft.decomposition
    transported = transport_decomposition(code, d, golden_sft.language)
    assert transported.t == d.t + 2
    assert transported.g(EMPTY)
    for g in g_words(d, golden_sft.language, 5):
        assert transported.g(apply_code(code, g))


def test_factor_entropy_gap(code, golden_sft):
    record = factor_entropy_gap(code, golden_sft.decomposition, golden_sft.language, 10)
    assert record.verdict == EVIDENCE
    assert record.values["gap_size"] == 3
    assert record.values["cp_count_bound"]


def test_identity_factor_condition_III(golden_sft):
    identity = BlockCode(0, 2, 2, {(0,): 0, (1,): 1})
    d = golden_sft.decomposition
    source = check_condition_III(d, golden_sft.language, M=2, tau_max=4, n_max=5)
    record = factor_condition_III(identity, d, golden_sft.language, M=2, tau_max=4, n_max=5)
    assert record.name == "factor-condition-III"
    assert record.verdict == source.verdict
    assert record.values["tau"] == source.values["tau"]
    assert record.values["words_tested"] == source.values["words_tested"]


def flip(window):
    return 1 - window[0]


@pytest.mark.parametrize("k,phi", [(0, flip), (1, outer_sum)])
def test_homomorphism_on_golden_beta(golden, k, phi):
    code = BlockCode.from_function(golden.language, k, phi, 2)
    words = enumerate_words(golden.language, 3)
    pairs = 0
    for v in words:
        for w in words:
            if golden.language.contains(v + w):
                pairs += 1
                assert homomorphism_check(code, v, w), (v, w)
    assert pairs > 0


def test_homomorphism_check_covers_short_words_for_k0(golden):
    code = BlockCode.from_function(golden.language, 0, flip, 2)
    system = factor_system(code, golden, "factor:flip@beta:golden")
    record = homomorphism(system, RunConfig(system=system.spec, use_cache=False))[0]
    assert record.verdict == PASS
    assert record.depth == 6
    assert record.values["pairs"] > 0


def test_transported_specification(golden):
    code = BlockCode.from_function(golden.language, 1, outer_sum, 2)
    factor = FactorLanguage(code, golden.language)
    transported = transport_decomposition(code, golden.decomposition, golden.language, factor)
    record = check_specification(transported, factor.oracle(), 5, m=2, mode="S")
    assert record.verdict == PASS
    assert record.values["t"] == golden.decomposition.t + 2


@pytest.mark.parametrize("name", ["golden", "golden_sft"])
def test_transported_prefix_counts(name, request):
    system = request.getfixturevalue(name)
    code = BlockCode.from_function(system.language, 1, outer_sum, 2)
    transported = transport_decomposition(code, system.decomposition, system.language)
    windows = count_layers(system.language, 2)[-1]
    for n in range(1, 11):
        source_count = len(prefix_words(system.decomposition, system.language, n))
        assert len(transported.cp_words(n)) <= windows * source_count
