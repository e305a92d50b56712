import pytest

from blobcx.algebra import ground_field, truncated_polynomial
from blobcx.blob import build_blob_complex, circle, disjoint_union, interval
from blobcx.blob.maps import contracting_homotopy, disjoint_union_iso, glue, matrix_order, rotation_action
from blobcx.chain import betti_numbers, tensor, verify_chain_map, verify_homotopy
from blobcx.linalg import SparseMatrix, rank


def is_identity(m):
    return m == SparseMatrix.identity(m.shape[0], m.field)


def test_contraction_interval1_ground_field():
    model = build_blob_complex(interval(1), ground_field(), cap=2)
    f, g, h = contracting_homotopy(model)
    assert is_identity(g[0])
    assert verify_homotopy(h, f, g).passed


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_contraction_intervals(n, T2):
    model = build_blob_complex(interval(n), T2, cap=3)
    f, g, h = contracting_homotopy(model)
    assert verify_chain_map(g).passed
    assert verify_homotopy(h, f, g).passed
    assert betti_numbers(model.complex)[:3] == [2, 0, 0]


def test_contraction_needs_towers(T2):
    model = build_blob_complex(interval(2), T2, cap=3, max_level=1)
    with pytest.raises(ValueError):
        contracting_homotopy(model)


def test_glue_interval_into_circle(T2):
    src = build_blob_complex(interval(3), T2, cap=2)
    tgt = build_blob_complex(circle(3), T2, cap=2)
    g = glue(src, tgt)
    assert verify_chain_map(g).passed
    # degree 0 is the identity on the field tensor, sites keep their order
    assert is_identity(g[0])
    # the empty configuration goes to the empty configuration
    assert g[0].shape == (tgt.complex.dim(0), src.complex.dim(0))
    assert rank(g[1]) == src.complex.dim(1)


def test_glue_two_intervals(T2):
    u = build_blob_complex(disjoint_union(interval(1), interval(2)), T2, cap=2)
    g = glue(u)
    assert g.target.dim(0) == u.complex.dim(0)
    assert verify_chain_map(g).passed
    assert is_identity(g[0])


def test_disjoint_union_points():
    Q = ground_field()
    a = build_blob_complex(interval(1), Q, cap=1)
    u = build_blob_complex(disjoint_union(interval(1), interval(1)), Q, cap=1)
    fwd, back = disjoint_union_iso(u, a, a)
    assert u.dims == [1, 0]
    assert is_identity(fwd[0])


def test_disjoint_union_iso(T2):
    a = build_blob_complex(interval(1), T2, cap=2)
    b = build_blob_complex(interval(2), T2, cap=2)
    u = build_blob_complex(disjoint_union(interval(1), interval(2)), T2, cap=2)
    fwd, back = disjoint_union_iso(u, a, b)
    assert verify_chain_map(fwd).passed and verify_chain_map(back).passed
    for k in range(3):
        assert fwd.source.dim(k) == fwd.target.dim(k)
        assert is_identity(back[k] @ fwd[k])


def _swap(a, b, cap):
    """Koszul transposition ``x (x) y -> (-1)^{|x||y|} y (x) x``."""
    ab, ba = tensor(a, b, cap), tensor(b, a, cap)
    comps = {}
    for n in range(cap + 1):
        entries = []
        src_off = 0
        for i in range(n + 1):
            j = n - i
            na, nb = a.dim(i), b.dim(j)
            # offset of block b_j (x) a_i in ba
            tgt_off = sum(b.dim(jj) * a.dim(n - jj) for jj in range(j))
            sign = -1 if (i * j) % 2 else 1
            for p in range(na):
                for q in range(nb):
                    entries.append((tgt_off + q * na + p, src_off + p * nb + q, sign))
            src_off += na * nb
        comps[n] = SparseMatrix(ba.dim(n), ab.dim(n), entries)
    return ab, ba, comps


def test_swapping_factors_gives_identity(T2):
    # B(A) (x) B(B) -> B(A + B) -> B(B + A) -> B(B) (x) B(A) is the Koszul swap
    from blobcx.blob.maps import _transport

    ia = build_blob_complex(interval(1), T2, cap=2)
    ib = build_blob_complex(interval(2), T2, cap=2)
    u_ab = build_blob_complex(disjoint_union(interval(1), interval(2)), T2, cap=2)
    u_ba = build_blob_complex(disjoint_union(interval(2), interval(1)), T2, cap=2)
    ab, ba, swap = _swap(ia.complex, ib.complex, 2)
    f_ab, _ = disjoint_union_iso(u_ab, ia, ib, ab)
    _, back_ba = disjoint_union_iso(u_ba, ib, ia, ba)
    na, nb = ia.field_dim, ib.field_dim

    def arc_map(a):
        return a._replace(part=1 - a.part)

    def field_map(v):
        return {(i % nb) * na + i // nb: x for i, x in v.items()}

    for k in range(3):
        relabel = _transport(u_ab, u_ba, k, arc_map, field_map)
        assert back_ba[k] @ relabel @ f_ab[k] == swap[k]
    _, _, swap_back = _swap(ib.complex, ia.complex, 2)
    for k in range(3):
        assert is_identity(swap_back[k] @ swap[k])


def test_rotation(T2):
    model = build_blob_complex(circle(3), T2, cap=2)
    r0 = rotation_action(model, 0)
    r3 = rotation_action(model, 3)
    for k in range(3):
        assert is_identity(r0[k]) and is_identity(r3[k])
    r1 = rotation_action(model, 1)
    assert verify_chain_map(r1).passed
    assert [matrix_order(r1[k]) for k in range(3)] == [3, 3, 3]


def test_rotation_rejects_marked(T2):
    from blobcx.algebra import regular_bimodule

    model = build_blob_complex(circle(3, marked=True), T2, regular_bimodule(T2), cap=1)
    with pytest.raises(ValueError):
        rotation_action(model, 1)
