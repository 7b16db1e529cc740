import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from conftest import FIXTURES
from pauligeo import cli
from pauligeo.evolution import random_drive

BELL = ["0", "0", "1", "1", "-1", "0", "0"]


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def drive_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("drive") / "drive.json"
    path.write_text(json.dumps(random_drive(6, 1, sinusoidal=True).to_dict()))
    return str(path)


def json_cases(drive_file):
    return {
        "table": ["table"],
        "subalgebras": ["subalgebras", "--size", "10"],
        "geometry": ["geometry", "--structure", "grids"],
        "designs": ["designs"],
        "kirkman": ["kirkman", "--labels", "pauli"],
        "cayley": ["cayley", "--group", "cq16"],
        "evolve": ["evolve", "--spec", drive_file, "--T", "0.3", "--report"],
        "xstate": ["xstate", "--g", *BELL],
        "discord-scan": ["discord-scan", "--n", "6"],
    }


@pytest.mark.parametrize("name", ["table", "subalgebras", "geometry", "designs", "kirkman",
                                  "cayley", "evolve", "xstate", "discord-scan"])
def test_json_validates_and_is_byte_identical(name, drive_file):
    argv = json_cases(drive_file)[name] + ["--format", "json"]
    code, first, _ = invoke(*argv)
    assert code == 0
    doc = json.loads(first)
    jsonschema.validate(doc, cli.load_schema(name))
    assert doc["manifest"]["subcommand"] == name
    assert invoke(*argv)[1] == first


def test_table_csv_matches_fixture():
    code, out, _ = invoke("table", "--format", "csv")
    assert code == 0
    assert out == (FIXTURES / "commutators.csv").read_text()


def test_plain_outputs():
    assert invoke("kirkman")[1].count("day ") == 7
    code, out, _ = invoke("designs")
    assert code == 0 and "651" in out and "641" in out


def test_csv_fallback_is_parseable():
    code, out, _ = invoke("xstate", "--g", *BELL, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["key", "value"] and len(rows) > 3


def test_env_seed(monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "42")
    doc = json.loads(invoke("discord-scan", "--n", "3", "--json")[1])
    assert doc["manifest"]["seed"] == 42
    assert doc["result"]["seed"] == 42
    doc = json.loads(invoke("discord-scan", "--n", "3", "--json", "--seed", "5")[1])
    assert doc["manifest"]["seed"] == 5


def test_bad_env_seed(monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "abc")
    code, _, err = invoke("discord-scan", "--n", "3")
    assert code == 1 and cli.SEED_ENV in err


def test_timing_adds_duration():
    doc = json.loads(invoke("table", "--json", "--timing")[1])
    assert doc["manifest"]["duration_s"] >= 0
    jsonschema.validate(doc, cli.load_schema("table"))
    assert "duration_s" not in json.loads(invoke("table", "--json")[1])["manifest"]


@pytest.mark.parametrize("argv", [["nosuch"], ["table", "--bogus"], ["geometry", "--structure", "cube"], []])
def test_usage_errors_exit_2(argv, capsys):
    assert invoke(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["evolve", "--spec", "missing.json"],
    ["subalgebras", "--size", "9"],
    ["designs", "--q", "1/3"],
    ["designs", "--q", "abc"],
    ["xstate", "--g", "0", "0", "2", "0", "0", "0", "0"],
    ["xstate", "--g", "0", "0"],
    ["xstate", "--center", "II", "--g", *BELL],
])
def test_domain_errors_exit_1(argv):
    code, out, err = invoke(*argv)
    assert code == 1
    assert out == ""
    assert err.startswith(f"pauligeo {argv[0]}: error:")


def test_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "pauligeo.cli", "kirkman"], capture_output=True, text=True)
    assert proc.returncode == 0 and "day 7" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "pauligeo.cli", "evolve", "--spec", "missing.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
