import json
import subprocess
import sys
from pathlib import Path

import pytest

from blobcx.cli import main

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_validate_builtin(capsys):
    code, rep, err = run(capsys, "algebra", "validate", "truncated_polynomial", "2")
    assert code == 0 and rep["passed"]
    assert "[PASS]" in err


def test_validate_shipped_spec(capsys):
    code, rep, _ = run(capsys, "algebra", "validate", str(SPECS / "matrix_algebra_2.json"))
    assert code == 0 and rep["passed"]
    assert len(rep["config"]["input_digest"]) == 64


def test_validate_nonassociative_file(tmp_path, capsys):
    doc = json.loads((SPECS / "truncated_polynomial_2.json").read_text())
    doc["multiplication"] = [e for e in doc["multiplication"] if e[:2] != [1, 0]] + [[1, 0, 0, 1, 1]]
    doc.pop("bimodules")
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, rep, _ = run(capsys, "algebra", "validate", str(p))
    assert code == 1
    assoc = next(c for c in rep["checks"] if c["name"] == "algebra: associativity")
    assert assoc["status"] == "fail" and len(assoc["witness"]["witness"]) == 3


def test_malformed_file_exit_2(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{ not json")
    code, rep, err = run(capsys, "algebra", "validate", str(p))
    assert code == 2 and rep is None
    assert "line 1" in err


def test_missing_file_exit_2(capsys):
    code, _, _ = run(capsys, "algebra", "validate", "/nonexistent/spec.json")
    assert code == 2


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["blob"])
    assert info.value.code == 2


def test_hochschild(capsys):
    code, rep, _ = run(capsys, "hochschild", "ground_field", "--cap", "5")
    assert code == 0 and rep["tables"]["hochschild"]["hh"] == [1, 0, 0, 0, 0]
    code, rep, _ = run(capsys, "hochschild", "truncated_polynomial", "2", "--cap", "5")
    assert rep["tables"]["hochschild"]["hh"] == [2, 1, 1, 1, 1]
    code, rep, _ = run(capsys, "hochschild", "matrix_algebra:2", "--cap", "3", "--module", "free")
    assert rep["tables"]["hochschild"]["hh"] == [4, 0, 0]


def test_blob_commands(capsys):
    code, rep, _ = run(capsys, "blob", "ground_field", "--sites", "1", "--cap", "1")
    assert code == 0 and rep["tables"]["blob"]["dims"][0] == 1 and rep["tables"]["blob"]["betti"][0] == 1
    code, rep, _ = run(capsys, "blob", "truncated_polynomial:2", "--sites", "3", "--cap", "3", "--marked")
    assert rep["tables"]["blob"]["skein_dim"] == 2
    code, rep, _ = run(capsys, "blob", "truncated_polynomial:2", "--sites", "3", "--cap", "3")
    t = rep["tables"]["blob"]
    assert t["dims"] == [8, 30, 54, 78] and t["betti"] == [2, 1, 1, 48]
    assert rep["config"]["sites"] == 3 and rep["config"]["cap"] == 3 and rep["config"]["field"] == "QQ"


def test_blob_budget_refusal(capsys):
    code, rep, err = run(capsys, "blob", "matrix_algebra:2", "--sites", "6", "--cap", "3", "--budget", "1000")
    assert code == 3 and rep is None
    assert "estimated" in err


def test_blob_bad_arguments(capsys):
    code, _, _ = run(capsys, "blob", "ground_field", "--sites", "0")
    assert code == 2
    code, _, _ = run(capsys, "blob", "ground_field", "--manifold", "interval", "--marked")
    assert code == 2


def test_compare(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, rep, _ = run(capsys, "compare", "truncated_polynomial:2", "--study", "2..5", "--out", str(out))
    assert code == 0 and rep is None
    rep = json.loads(out.read_text())
    rows = rep["tables"]["stabilization"]
    assert [r["N"] for r in rows] == [2, 3, 4, 5]
    assert {r["h0"] for r in rows} == {2}
    code, rep, _ = run(capsys, "compare", "ground_field", "--study", "3..3")
    assert code == 0


def test_compare_bad_range(capsys):
    code, _, _ = run(capsys, "compare", "ground_field", "--study", "2-5")
    assert code == 2


def test_prime_field_is_echoed(capsys, monkeypatch):
    monkeypatch.setenv("BLOB_FIELD", "p:7")
    code, rep, _ = run(capsys, "hochschild", "truncated_polynomial:2", "--cap", "3")
    assert code == 0 and rep["config"]["field"] == "GF(7)"


def test_reports_are_deterministic(capsys):
    _, a, _ = run(capsys, "blob", "truncated_polynomial:2", "--sites", "3", "--cap", "2")
    _, b, _ = run(capsys, "blob", "truncated_polynomial:2", "--sites", "3", "--cap", "2")
    assert json.dumps(a) == json.dumps(b)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "blobcx", "hochschild", "ground_field", "--cap", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tables"]["hochschild"]["hh"] == [1, 0]
