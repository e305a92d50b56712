import pytest

from blobcx.algebra import ground_field, regular_bimodule
from blobcx.comparison import build_phi, h0_comparison, stabilization_study, verify_phi
from blobcx.linalg import SparseMatrix

# minimal N at which each degree agrees with HH (and keeps agreeing), frozen
# from the quick acceptance run; degrees 1 and 2 use the tower-free model
GOLDEN_T2_FIRST = {0: 2, 1: 3, 2: 3}
GOLDEN_T2_STABLE = {0: 2, 1: 3, 2: 3}


def test_ground_field_trivial():
    cm = build_phi(ground_field(), n=3)
    assert verify_phi(cm).passed
    rep = h0_comparison(cm)
    assert rep.passed and rep.tables["h0"] == {"dim": 1, "coinvariants": 1}


def test_phi_identities_T2(T2):
    cm = build_phi(T2, n=3)
    assert verify_phi(cm).passed
    assert h0_comparison(cm).tables["h0"]["dim"] == 2


def test_phi_identities_M2(M2):
    cm = build_phi(M2, regular_bimodule(M2), n=3)
    rep = verify_phi(cm)
    assert rep.passed
    assert h0_comparison(cm).passed
    assert h0_comparison(cm).tables["h0"]["dim"] == 1


def test_phi1_has_two_blobs(T2):
    cm = build_phi(T2, n=3)
    model = cm.target
    for j in range(cm.phi[1].shape[1]):
        configs = {model.generator(1, i)[0] for i in cm.phi[1].column(j)}
        assert len(configs) <= 2


def test_sign_flip_is_caught(T2):
    cm = build_phi(T2, n=3)
    cm.phi[1] = cm.phi[1].scale(-1)
    assert not verify_phi(cm).passed


def test_phi_needs_three_sites(T2):
    with pytest.raises(ValueError):
        build_phi(T2, n=2)


def test_stabilization_T2(T2):
    rep = stabilization_study(T2, None, range(2, 6), 2)
    assert rep.passed
    found = rep.tables["minimal_agreeing_N"]
    assert found["first"] == GOLDEN_T2_FIRST
    assert found["stable_from"] == GOLDEN_T2_STABLE
    assert len({r["h0"] for r in rep.tables["stabilization"]}) == 1


def test_stabilization_ground_field(Q):
    rep = stabilization_study(Q, None, range(2, 6), 2)
    assert all(r["betti"] == [1, 0, 0] for r in rep.tables["stabilization"])


def test_stabilization_records_budget_skips(M2):
    rep = stabilization_study(M2, None, range(2, 5), 1, budget=500)
    statuses = [r["status"] for r in rep.tables["stabilization"]]
    assert any(s.startswith("skipped") for s in statuses)
    assert rep.passed  # degree 0 is still computed for every N
