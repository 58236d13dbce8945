import csv
from fractions import Fraction
import io
import json

import pytest

from reports.report import FAIL, PASS, CheckRecord, Report, normalize_value
from utils.errors import ValidationError


def sample_report():
    report = Report("ab" * 32, "beta:golden", {"depth": 12})
    report.add(CheckRecord("growth", 12, {"rate": 0.48121182505960347, "counts": (2, 3, 5)}, PASS))
    report.add(CheckRecord("parse-cover", 8, {"uncovered": []}, FAIL, ["1 word uncovered"]))
    return report


def test_normalize_value():
    assert normalize_value(1 / 3) == 0.333333333333
    assert normalize_value(float("inf")) == "inf"
    assert normalize_value(float("-inf")) == "-inf"
    assert normalize_value(Fraction(2, 6)) == "1/3"
    assert normalize_value({1: (0, 1)}) == {"1": [0, 1]}
    assert normalize_value({3, 1}) == [1, 3]
    assert normalize_value(True) is True


def test_unknown_verdict():
    with pytest.raises(ValidationError):
        CheckRecord("growth", 1, verdict="maybe")


def test_summary_and_failures():
    report = sample_report()
    assert report.has_failures()
    assert report.summary() == "beta:golden: 1 pass, 1 fail"
    assert Report("x", "empty").summary() == "empty: no checks run"


def test_json_rendering():
    data = json.loads(sample_report().render("json"))
    assert data["system"]["label"] == "beta:golden"
    assert data["records"][0]["values"]["counts"] == [2, 3, 5]
    assert data["records"][1]["notes"] == ["1 word uncovered"]


def test_csv_rendering():
    rows = list(csv.reader(io.StringIO(sample_report().render("csv"))))
    assert rows[0] == ["schema_version", "system", "check", "depth", "verdict", "key", "value"]
    assert rows[1][2:] == ["growth", "12", "pass", "counts", "[2,3,5]"]
    assert len(rows) == 4


def test_unknown_format():
    with pytest.raises(ValidationError):
        sample_report().render("xml")


def test_write(tmp_path):
    path = sample_report().write(str(tmp_path / "out" / "report.tsv"), "tsv")
    text = path.read_text()
    assert text.startswith("schema_version\tsystem")
    assert [p.name for p in path.parent.iterdir()] == ["report.tsv"]
