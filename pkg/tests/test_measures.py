from fractions import Fraction
import itertools
import math

import pytest

from language.engine import enumerate_words
from measures.empirical import compatibility_defect, empirical_mme, measure_entropy
from measures.gibbs import gibbs_report
from measures.parry import parry_measure
from measures.periodic import PeriodicSet, entropy_from_periodic, periodic_measure, periodic_points
from reports.report import EVIDENCE
from utils.errors import ValidationError

LOG_GOLDEN = math.log((1 + math.sqrt(5)) / 2)


def test_parry_golden(golden):
    parry = parry_measure(golden.finite_automaton)
    assert parry.entropy == pytest.approx(LOG_GOLDEN, abs=1e-10)
    assert parry((0,)) == pytest.approx(0.7236067977, abs=1e-8)
    assert parry((1,)) == pytest.approx(0.2763932023, abs=1e-8)
    assert parry((0, 0)) + parry((0, 1)) == pytest.approx(parry((0,)), abs=1e-10)
    assert parry((1, 1)) == 0.0


def test_parry_full_shift_is_uniform(full2):
    parry = parry_measure(full2.finite_automaton)
    assert parry((0,)) == pytest.approx(0.5)
    assert parry((1, 0, 1)) == pytest.approx(0.125)


def test_periodic_counts(golden):
    ps = periodic_points(golden.language, 18, presentation=golden.finite_automaton)
    assert ps.per_count(2) == 3
    assert ps.per_count(3) == 6
    assert ps.fixed_count(4) == 7
    assert ps.fixed_count(18) == 5778
    assert ps.undecided == []


def test_periodic_entropy(golden):
    ps = periodic_points(golden.language, 16, presentation=golden.finite_automaton)
    record = entropy_from_periodic(ps, LOG_GOLDEN)
    assert record.verdict == EVIDENCE
    assert abs(record.values["fix_deviation"]) < 0.01


def test_periodic_measure(golden_sft):
    ps = periodic_points(golden_sft.language, 3)
    measure = periodic_measure(ps, [(0,), (1,)])
    assert measure.exact((0,)) == Fraction(4, 6)
    assert measure.exact((1,)) == Fraction(2, 6)
    with pytest.raises(ValidationError):
        measure((0, 0))


def test_empirical_measure_golden(golden):
    mu = empirical_mme(golden.language, 20, [(0,), (1,), (1, 1), (1, 0)], presentation=golden.finite_automaton)
    assert mu.exact((0,)) + mu.exact((1,)) == 1
    assert mu((1, 1)) == 0
    assert mu((1,)) == pytest.approx(0.2764, abs=0.02)
    assert measure_entropy(mu, 1) > 0


def test_empirical_enumeration_matches_counting(golden_sft, contains_only):
    targets = [(0,), (1,), (0, 1)]
    counted = empirical_mme(golden_sft.language, 10, targets)
    enumerated = empirical_mme(contains_only(golden_sft.language), 10, targets)
    assert counted.cylinder == enumerated.cylinder


def test_empirical_rejects_long_targets(golden_sft):
    with pytest.raises(ValidationError):
        empirical_mme(golden_sft.language, 4, [(0, 0, 0)])


def test_gibbs_ratios_bounded(golden):
    report = gibbs_report(golden.language, golden.decomposition, golden.exact_entropy, n_max=8, m=24,
                          presentation=golden.finite_automaton)
    parry = parry_measure(golden.finite_automaton)
    phi = math.exp(LOG_GOLDEN)
    # extreme cylinders of the Parry measure: [100] from below, [0] from above
    assert report.lower_constant == pytest.approx(parry((1, 0, 0)) * phi ** 3, rel=0.1)
    assert report.upper_constant == pytest.approx(parry((0,)) * phi, rel=0.1)
    assert report.lower_constant == pytest.approx(0.729225, abs=1e-5)
    assert report.upper_constant == pytest.approx(1.160520, abs=1e-5)
    assert report.to_record().verdict == EVIDENCE


def test_gibbs_needs_depth(golden):
    with pytest.raises(ValidationError):
        gibbs_report(golden.language, golden.decomposition, golden.exact_entropy, n_max=6, m=10)


def test_compatibility_defect(golden_sft, golden):
    targets = [w for n in (1, 2, 3) for w in itertools.product((0, 1), repeat=n)]
    periodic = periodic_measure(periodic_points(golden_sft.language, 6), targets)
    assert compatibility_defect(periodic, 1) == 0.0
    assert compatibility_defect(periodic, 2) == 0.0

    mu = empirical_mme(golden.language, 20, targets, presentation=golden.finite_automaton)
    assert 0.0 <= compatibility_defect(mu, 2) < 0.15
    with pytest.raises(ValidationError):
        compatibility_defect(mu, 3)


def test_periodic_measure_approaches_parry(golden):
    targets = enumerate_words(golden.language, 3)
    parry = parry_measure(golden.finite_automaton)
    ps = periodic_points(golden.language, 20, presentation=golden.finite_automaton)
    assert ps.per_count(20) == 39228

    def deviation(n):
        truncated = PeriodicSet(n=n, points={q: words for q, words in ps.points.items() if q <= n})
        measure = periodic_measure(truncated, targets)
        return max(abs(measure(w) - parry(w)) for w in targets)

    assert deviation(20) <= 0.05
    assert deviation(20) <= deviation(8)


def test_periodic_rates_at_18(golden):
    ps = periodic_points(golden.language, 18, presentation=golden.finite_automaton)
    assert ps.per_count(18) == 14880
    assert abs(math.log(ps.fixed_count(18)) / 18 - LOG_GOLDEN) < 0.05
    # least period at most n runs above h by roughly log(n)/n
    assert abs(math.log(ps.per_count(18)) / 18 - LOG_GOLDEN) < 0.06
