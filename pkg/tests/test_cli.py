import argparse
import asyncio
import json

import pytest

from cli.events import EXIT_BUDGET, EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, register_events
from cli.runner import RunConfig, run
from language.cache import get_layer_cache
from reports.report import FAIL
from shiftlab import main
from utils.errors import BudgetExceeded, ConfigError, ValidationError


def invoke(*argv):
    return asyncio.run(main(list(argv)))


def load(path):
    data = json.loads(path.read_text())
    return {record["name"]: record for record in data["records"]}, data


def test_verify_passes(tmp_path):
    out = tmp_path / "verify.json"
    code = invoke("verify", "--system", "golden-sft", "--conditions", "I", "--n-max", "3", "--m", "2",
                  "--no-cache", "--out", str(out))
    assert code == EXIT_OK
    records, data = load(out)
    assert records["condition-I"]["verdict"] == "pass"
    assert data["system"]["label"] == "golden-sft"


def test_reports_are_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        invoke("verify", "--system", "beta:golden", "--conditions", "II", "--depth", "16",
               "--no-cache", "--out", str(out))
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    a.pop("generated_at")
    b.pop("generated_at")
    assert a == b


@pytest.mark.parametrize("argv", [
    ("verify", "--system", ""),
    ("verify", "--system", "beta:0.5"),
    ("verify", "--system", "full:2", "--checks", "bogus"),
    ("verify", "--system", "full:2", "--depth", "0"),
    ("sgap", "--set", "1,2", "--rule", "pow2"),
    ("reproduce", "fibonacci-counts", "--format", "json", "--threads", "0"),
])
def test_input_errors_exit_2(argv):
    assert invoke(*argv, "--no-cache") == EXIT_CONFIG


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as excinfo:
        invoke()
    assert excinfo.value.code == 2


def test_sgap_entropy_command(tmp_path):
    out = tmp_path / "sgap.json"
    code = invoke("sgap", "--set", "1,2", "--bounded", "--entropy", "--count", "16", "--no-cache", "--out", str(out))
    assert code == EXIT_OK
    records, _ = load(out)
    assert records["sgap-entropy"]["values"]["lambda"] == "1.32471795724"
    assert records["sgap-entropy"]["verdict"] == "pass"


def test_beta_command_csv(tmp_path):
    out = tmp_path / "beta.csv"
    code = invoke("beta", "--beta", "golden", "--count", "16", "--no-cache", "--format", "csv", "--out", str(out))
    assert code == EXIT_OK
    assert out.read_text().startswith("schema_version,system,check")


def test_reproduce_fibonacci(tmp_path):
    code = invoke("reproduce", "fibonacci-counts", "--no-cache", "--out", str(tmp_path))
    assert code == EXIT_OK
    data = json.loads((tmp_path / "fibonacci-counts.json").read_text())
    assert [r["values"]["system"] for r in data["records"]] == ["beta:golden", "golden-sft"]
    assert all(r["verdict"] == "pass" for r in data["records"])


def test_failed_check_becomes_record():
    def broken(system, config):
        raise RuntimeError("boom")

    report, code = asyncio.run(run(RunConfig(system="full:2", use_cache=False), [("broken", broken)], emit=False))
    assert code == EXIT_FAILURE
    assert report.records[0].verdict == FAIL
    assert report.records[0].notes == ["error: boom"]


@pytest.mark.parametrize("error,expected", [
    (ValidationError("bad"), EXIT_CONFIG),
    (ConfigError("bad"), EXIT_CONFIG),
    (BudgetExceeded("layer enumeration", 10), EXIT_BUDGET),
    (RuntimeError("boom"), EXIT_FAILURE),
])
def test_exit_codes(error, expected):
    async def handler(args):
        raise error

    assert asyncio.run(register_events(handler)(argparse.Namespace(command="test"))) == expected


def test_cache_round_trip(tmp_path, capsys):
    get_layer_cache().clear()
    out = tmp_path / "report.json"
    assert invoke("verify", "--system", "golden-sft", "--conditions", "II", "--depth", "10",
                  "--cache-dir", str(tmp_path), "--out", str(out)) == EXIT_OK
    capsys.readouterr()

    assert invoke("cache", "show", "--cache-dir", str(tmp_path)) == EXIT_OK
    assert "golden-sft" in capsys.readouterr().out

    assert invoke("cache", "clear", "--cache-dir", str(tmp_path)) == EXIT_OK
    assert invoke("cache", "show", "--cache-dir", str(tmp_path)) == EXIT_OK
    assert "empty" in capsys.readouterr().out
