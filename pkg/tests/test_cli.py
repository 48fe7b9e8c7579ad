from __future__ import annotations

import io
import json

import pytest

from caterpillar_broadcast.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_beta_values(capsys):
    code, out, _ = run(capsys, "beta", "--lambdas", "3,0,3")
    assert code == 0 and "beta_b = 7" in out
    code, out, _ = run(capsys, "beta", "--lambdas", "1,0,2,1,1,2,1,0,3", "--json")
    doc = json.loads(out)
    assert doc["beta_b"] == 18 and doc["attained_by"] == "canonical"
    assert doc["breakdown"]["beta_star"] == 16


def test_beta_adjacent_trunks_uses_fastpath(capsys):
    code, out, _ = run(capsys, "beta", "--lambdas", "1,0,0,1", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["reason"] == "adjacent_trunks" and doc["suggestion"] == "oracle"
    assert doc["fastpath"] == {"value": 8, "rule": "small_stems"}


def test_beta_unsupported_without_fastpath(capsys):
    code, out, _ = run(capsys, "beta", "--lambdas", "1,0,0,3", "--json")
    assert code == 2
    assert json.loads(out)["fastpath"] is None


def test_as_written_variant(capsys):
    code, out, _ = run(capsys, "beta", "--lambdas", "2,0,3", "--variant", "as-written", "--json")
    assert json.loads(out)["beta_b"] == 7


def test_validation_exit_code(capsys):
    code, _, err = run(capsys, "beta", "--lambdas", "0,1")
    assert code == 1 and "error" in err


def test_budget_exit_code(capsys):
    code, _, _ = run(capsys, "oracle", "--star", "40", "--budget", "5")
    assert code == 3


def test_construct_outputs(capsys):
    code, out, _ = run(capsys, "construct", "--lambdas", "3,0,3")
    doc = json.loads(out)
    assert doc["cost"] == 7 and doc["values"]["v1"] == 1
    code, out, _ = run(capsys, "construct", "--lambdas", "2,0,3", "--trace")
    doc = json.loads(out)
    assert doc["cost"] == 6
    assert [s["cost"] for s in doc["trace"]["steps"]] == [6, 6, 6, 6]


@pytest.mark.parametrize(
    "argv, value",
    [(["--star", "5"], 5), (["--path", "8"], 12), (["--lambdas", "2,0,3", "--naive"], 6)],
)
def test_oracle(capsys, argv, value):
    code, out, _ = run(capsys, "oracle", *argv, "--json")
    assert code == 0 and json.loads(out)["beta_b"] == value


def test_verify_canonical(capsys):
    code, out, _ = run(capsys, "verify", "--lambdas", "1,1", "--json")
    assert json.loads(out) == {
        "valid": True, "independent": True, "dominating": True, "maximal_independent": True, "cost": 4,
    }


def test_construct_verify_round_trip(capsys, monkeypatch):
    _, out, _ = run(capsys, "construct", "--lambdas", "1,0,1,0,3")
    code, res, _ = run(capsys, "verify", "--lambdas", "1,0,1,0,3", "--broadcast", "-", "--json",
                       stdin=out, monkeypatch=monkeypatch)
    doc = json.loads(res)
    assert doc["valid"] and doc["independent"] and doc["cost"] == json.loads(out)["cost"]


def test_verify_rejects_bad_document(capsys, monkeypatch, tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"values": {"nope": 1}}))
    code, _, _ = run(capsys, "verify", "--lambdas", "1,1", "--broadcast", str(path))
    assert code == 1
    path.write_text(json.dumps({"values": {"l0_1": 1}, "cost": 2}))
    code, _, _ = run(capsys, "verify", "--lambdas", "1,1", "--broadcast", str(path))
    assert code == 1


def test_instance_document(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"tree": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}}))
    code, out, _ = run(capsys, "oracle", "--instance", str(path), "--json")
    assert json.loads(out)["beta_b"] == 4
    path.write_text(json.dumps({"lambdas": [1, 0, 2], "tree": {}}))
    code, _, _ = run(capsys, "oracle", "--instance", str(path))
    assert code == 1


def test_patterns(capsys):
    code, out, _ = run(capsys, "patterns", "--lambdas", "1,0,2,1,1,2,1,0,3", "10", "--json")
    doc = json.loads(out)
    assert doc["count"] == 2 and [o["start"] for o in doc["occurrences"]] == [0, 6]
    code, out, _ = run(capsys, "patterns", "--lambdas", "2,0,3", "--json")
    f = json.loads(out)["formula"]
    assert f["left"] == [{"start": 0, "end": 1, "alpha2_effective": 0, "alpha2_as_written": 1}]


def test_patterns_bad_text(capsys):
    code, _, _ = run(capsys, "patterns", "--lambdas", "1,1", "(2")
    assert code == 1


def test_export_dot_is_stable(capsys, tmp_path):
    _, a, _ = run(capsys, "export-dot", "--lambdas", "1,1")
    _, b, _ = run(capsys, "export-dot", "--lambdas", "1,1")
    assert a == b
    assert "rank=same" in a and '"v0" -- "v1"' in a
    out = tmp_path / "w.dot"
    run(capsys, "export-dot", "--lambdas", "3,0,3", "--witness", "-o", str(out))
    assert "f=1" in out.read_text()


def test_sweep_outputs(capsys, tmp_path):
    jl, cv = tmp_path / "s.jsonl", tmp_path / "s.csv"
    code, out, _ = run(capsys, "sweep", "--k-max", "2", "--leaf-cap", "5", "--jsonl", str(jl), "--csv", str(cv), "--summary")
    assert code == 0 and "status: clean" in out
    first = jl.read_bytes()
    run(capsys, "sweep", "--k-max", "2", "--leaf-cap", "5", "--jsonl", str(jl))
    assert jl.read_bytes() == first


def test_sweep_findings_exit_code(capsys):
    code, out, _ = run(capsys, "sweep", "--k-min", "4", "--k-max", "4", "--leaf-cap", "8")
    assert code == 5 and "status: findings" in out
