import csv
import io
import json

import pytest
from click.testing import CliRunner

from mincusp.cli import main, parse_k
from mincusp.errors import ValidationError


@pytest.fixture
def runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:           # click >= 8.2 always separates the streams
        return CliRunner()


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_k():
    assert parse_k("4") == [4]
    assert parse_k("1..5") == [1, 2, 3, 4, 5]
    assert parse_k("2,6,4") == [2, 4, 6]
    with pytest.raises(ValidationError):
        parse_k("5..2")
    with pytest.raises(ValidationError):
        parse_k("x")


def test_census_counts_with_oracle(runner):
    r = runner.invoke(main, ["census", "--family", "mk1k", "--k", "1..8",
                             "--oracle", "upto", "3", "--format", "csv"])
    assert r.exit_code == 0, r.stderr
    rows = _csv(r.stdout)
    per_k = {}
    for row in rows:
        per_k[int(row["k"])] = int(row["count"])
    assert [per_k[k] for k in range(1, 9)] == [1, 1, 2, 1, 3, 2, 4, 2]
    assert all(row["oracle_agrees"] == "True" for row in rows if int(row["k"]) <= 3)


def test_census_empty_family(runner):
    r = runner.invoke(main, ["census", "--family", "mkk", "--k", "3", "--format", "csv"])
    assert r.exit_code == 0
    rows = _csv(r.stdout)
    assert len(rows) == 1 and rows[0]["count"] == "0"


def test_volume_value(runner):
    r = runner.invoke(main, ["volume", "--k", "2"])
    assert r.exit_code == 0
    assert "9.1344744577" in r.stdout


def test_volume_json(runner):
    r = runner.invoke(main, ["volume", "--k", "2,4", "--format", "json"])
    data = json.loads(r.stdout)
    assert [d["k"] for d in data] == [2, 4]


def test_invariants(runner):
    r = runner.invoke(main, ["invariants", "--k", "2..6", "--format", "json"])
    assert r.exit_code == 0
    assert [d["k"] for d in json.loads(r.stdout)] == [2, 4, 6]


def test_dehnfill_model(runner):
    r = runner.invoke(main, ["dehnfill", "--k", "2", "--model", "--cusp", "1", "--format", "json"])
    assert r.exit_code == 0
    rows = json.loads(r.stdout)
    assert rows and all(d["isomorphic_to_M0"] and d["final_counts"] == "3 6 2" for d in rows)


def test_spine_exports(runner):
    r = runner.invoke(main, ["spine", "--k", "2", "--format", "dot"])
    assert r.exit_code == 0 and r.stdout.startswith("graph")
    r = runner.invoke(main, ["spine", "--k", "2", "--format", "svg"])
    assert r.exit_code == 0 and r.stdout.startswith("<svg")
    r = runner.invoke(main, ["spine", "--k", "2", "--format", "json"])
    assert r.exit_code == 0 and "faces" in json.loads(r.stdout)


def test_verify_quick(runner):
    r = runner.invoke(main, ["verify", "--quick"])
    assert r.exit_code == 0, r.stdout
    assert "FAIL" not in r.stdout


@pytest.mark.parametrize("args", [
    ["census", "--k", "0"],
    ["volume", "--k", "3"],
    ["dehnfill", "--k", "2", "--slope", "1/1"],
    ["dehnfill", "--k", "2", "--cusp", "9"],
    ["volume", "--k", "2", "--format", "dot"],
])
def test_validation_errors_exit_2(runner, args):
    r = runner.invoke(main, args)
    assert r.exit_code == 2
    err = json.loads(r.stderr.strip().splitlines()[-1])
    assert err["exit"] == 2 and err["message"]


def test_outputs_are_deterministic(runner, tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"c{i}.csv"
        r = runner.invoke(main, ["census", "--family", "mk1k", "--k", "1..6",
                                 "--format", "csv", "--out", str(p), "--seed", "7"])
        assert r.exit_code == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
