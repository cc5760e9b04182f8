from __future__ import annotations

import csv
import io
import json

import pytest

from elliptic_ainfty.cli import TOL_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eis(capsys):
    code, out, _ = run(capsys, "eis", "--tau", "0,2", "--n", "4", "--method", "rapid")
    assert code == 0
    rec = json.loads(out)
    assert list(rec) == ["command", "inputs", "results", "suite"]
    (res,) = rec["results"]
    assert res["value"][0] == pytest.approx(2.1664582514808046, abs=1e-12)
    assert res["tail_bound"] < 1e-10


def test_eis_zero_at_i(capsys):
    code, out, _ = run(capsys, "eis", "--tau", "0,1", "--n", "2")
    assert code == 0
    assert max(map(abs, json.loads(out)["results"][0]["value"])) < 1e-10


def test_eis_odd_n(capsys):
    code, _, err = run(capsys, "eis", "--n", "3")
    assert code == 2
    assert "n must be even ≥ 2" in err


def test_invalid_inputs(capsys):
    assert run(capsys, "eis", "--tau", "0,-1", "--n", "4")[0] == 2
    assert run(capsys, "eis", "--tau", "garbage", "--n", "4")[0] == 2
    assert run(capsys, "eis", "--omega1", "1,0", "--n", "4")[0] == 2
    assert run(capsys, "eis", "--omega1", "1,0", "--omega2", "2,0", "--n", "4")[0] == 2
    assert run(capsys, "verify", "--only", "nonsense")[0] == 2
    assert run(capsys, "trees", "--leaves", "40")[0] == 2
    assert run(capsys)[0] == 2


def test_omega_pair(capsys):
    code, out, _ = run(capsys, "eis", "--omega1", "2,0", "--omega2", "0,4", "--n", "4")
    assert code == 0
    assert json.loads(out)["results"][0]["value"][0] == pytest.approx(2.1664582514808046 / 16, abs=1e-12)


def test_table_json(capsys):
    code, out, _ = run(capsys, "m-table", "--tau", "0,2", "--n-max", "5", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    families = {r["family"] for r in rec["results"]}
    assert families == {"m2", "I", "II", "III", "IV"}
    assert json.loads(json.dumps(rec)) == rec


def test_table_m2_only(capsys):
    _, out, _ = run(capsys, "m-table", "--tau", "0,2", "--n-max", "3")
    assert {r["family"] for r in json.loads(out)["results"]} == {"m2"}


def test_table_csv_matches_json(capsys):
    _, out_json, _ = run(capsys, "m-table", "--tau", "0.25,1.5", "--n-max", "4")
    _, out_csv, _ = run(capsys, "m-table", "--tau", "0.25,1.5", "--n-max", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    recs = json.loads(out_json)["results"]
    assert list(rows[0]) == ["index", "family", "exponents", "inputs", "output", "re", "im", "tail_bound"]
    assert [r["index"] for r in rows] == [r["index"] for r in recs]
    assert [[float(r["re"]), float(r["im"])] for r in rows] == [r["value"] for r in recs]


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all")
    assert code == 0
    rec = json.loads(out)
    assert rec["results"][0]["failures"] == 0
    assert all(r["passed"] for r in rec["suite"])


def test_verify_forced_failure(capsys):
    code, out, err = run(capsys, "verify", "--only", "eis", "--tol", "1e-30")
    assert code == 1
    assert "residual=" in err


def test_verify_cusp_only(capsys):
    code, out, _ = run(capsys, "verify", "--only", "cusp", "--im-tau", "20")
    rec = json.loads(out)
    assert {r["name"] for r in rec["suite"]} == {"cusp"}
    assert code == 1  # finite Im tau leaves O(1/Im tau) offsets


def test_verify_literal(capsys):
    code, _, err = run(capsys, "verify", "--only", "weil_vi5", "--literal")
    assert code == 1
    assert "weil_vi5" in err


def test_trees(capsys):
    code, out, _ = run(capsys, "trees", "--leaves", "6", "--string", "1", "0", "1", "0")
    assert code == 0
    rec = json.loads(out)
    assert [r["trees"] for r in rec["results"][0]["rows"]] == [1, 2, 5, 14, 42]
    for bucket in rec["results"][1:]:
        assert bucket["tree_sum"] == bucket["binomial"]


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv(TOL_ENV, "1e-6")
    _, out, _ = run(capsys, "eis", "--tau", "0,2", "--n", "4")
    assert json.loads(out)["inputs"]["tol"] == 1e-6
    monkeypatch.setenv(TOL_ENV, "abc")
    assert run(capsys, "eis", "--tau", "0,2", "--n", "4")[0] == 2


def test_deterministic_output(capsys):
    a = run(capsys, "m-table", "--tau", "0.25,1.5", "--n-max", "6")[1]
    b = run(capsys, "m-table", "--tau", "0.25,1.5", "--n-max", "6")[1]
    assert a == b
