import json

from blobcx.algebra import matrix_algebra, validate
from blobcx.cli import main
from blobcx.verify import ITEMS, run_all, run_item


def test_mutation_flips_checks():
    # e12 * e21 = e22 instead of e11: no longer associative
    bad = matrix_algebra(2).tampered(1, 2, {3: 1})
    assert not validate(bad).passed
    verdicts = {n: run_item(n, "quick", [bad]).passed for n in (2, 6, 8)}
    assert not all(verdicts.values()), verdicts


def test_run_all_subset_records():
    rep = run_all("quick", items=[7, 9, 10])
    assert [c.name for c in rep.checks] == ["A7 oracle agreement", "A9 shape map", "A10 splitting posets"]
    assert rep.passed


def test_verify_all_quick_cli(capsys, tmp_path):
    out = tmp_path / "verify.json"
    code = main(["verify", "all", "--profile", "quick", "--out", str(out)])
    err = capsys.readouterr().err
    rep = json.loads(out.read_text())
    names = [c["name"] for c in rep["checks"]]
    assert code == 0 and rep["passed"]
    assert names == [f"A{n} {t}" for n, t, _ in ITEMS]
    assert len(set(names)) == len(names) == 12
    assert rep["config"]["profile"] == "quick"
    assert "stable_from" in json.dumps(rep["checks"][-1]["witness"]["findings"])
    assert err.count("[PASS]") == 12
