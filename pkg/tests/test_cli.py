import csv
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from dualhahn.cli import EXIT_CONFIG, EXIT_DIMENSION, EXIT_FAIL, EXIT_OK, main

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "report.schema.json").read_text())


def run_json(capsys, *argv):
    code = main(["verify", *argv, "--output", "json"])
    out = capsys.readouterr().out
    return code, out


def test_sd2_json_valid(capsys):
    code, out = run_json(capsys, "sd2", "--cutoff", "4")
    assert code == EXIT_OK
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    tags = [r["tag"] for s in report["suites"] for rep in s["reports"] for r in rep["results"]]
    assert "sd2:sd2:J2J3" in tags
    assert len(tags) == len(set(tags))


def test_timing_adds_seconds(capsys):
    code, out = run_json(capsys, "osp", "--cutoff", "4", "--timing")
    assert code == EXIT_OK
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert "seconds" in report["suites"][0]


def test_text_output(capsys):
    assert main(["verify", "osp", "--cutoff", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.strip().endswith("RESULT: PASS")


def test_vacuous_cutoff_fails(capsys):
    code, out = run_json(capsys, "commutant", "--cutoff", "1")
    assert code == EXIT_FAIL
    statuses = {r["status"] for s in json.loads(out)["suites"] for rep in s["reports"] for r in rep["results"]}
    assert "VACUOUS" in statuses


def test_budget_override_forces_vacuous(capsys):
    code, _ = run_json(capsys, "osp", "--cutoff", "4", "--budget", "5")
    assert code == EXIT_FAIL


@pytest.mark.parametrize("argv", [
    ["verify", "sd2", "--mu1", "one third"],
    ["verify", "sd2", "--eps1", "2"],
    ["verify", "commutant", "--partition", "3,2"],
    ["verify", "nosuch"],
])
def test_argument_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_CONFIG


@pytest.mark.parametrize("argv", [
    ["verify", "cg", "--backend", "exact"],
    ["verify", "sd2", "--cutoff", "0"],
    ["verify", "sd2", "--mu1=-1/3"],
    ["verify", "sd2", "--cutoff", "2"],
])
def test_config_errors(argv, capsys):
    assert main(argv) == EXIT_CONFIG
    assert "configuration error" in capsys.readouterr().err


def test_dimension_guard(monkeypatch, capsys):
    monkeypatch.setenv("DUALHAHN_MAX_DIM", "100")
    assert main(["verify", "howe", "--cutoff", "4"]) == EXIT_DIMENSION
    assert "DUALHAHN_MAX_DIM" in capsys.readouterr().err


def test_cg_csv_export(tmp_path, capsys):
    path = tmp_path / "cg.csv"
    code, out = run_json(capsys, "cg", "--cutoff", "6", "--j-max", "2", "--csv", str(path))
    assert code == EXIT_OK
    rows = list(csv.DictReader(path.open()))
    assert {int(r["j"]) for r in rows} == {0, 1, 2}
    assert json.loads(out)["suites"][0]["extra"]["table"]["j_max"] == 2


def test_seed_changes_sampled_irreps(capsys):
    _, a = run_json(capsys, "osp", "--cutoff", "4", "--seed", "1")
    _, b = run_json(capsys, "osp", "--cutoff", "4", "--seed", "2")
    pick = lambda text: json.loads(text)["suites"][0]["extra"]["random_irreps"]
    assert pick(a) != pick(b)


def test_module_entry_point_deterministic():
    cmd = [sys.executable, "-m", "dualhahn", "verify", "sd2", "--cutoff", "4", "--output", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd + ["--jobs", "3"], capture_output=True, check=True).stdout
    assert first == second
