from blobcx.algebra import ground_field, regular_bimodule, truncated_polynomial
from blobcx.blob import build_blob_complex, disjoint_union, interval
from blobcx.chain import (
    ChainComplex,
    ChainHomotopy,
    ChainMap,
    betti_numbers,
    direct_sum,
    homology,
    identity_map,
    short_exact_check,
    tensor,
    validate,
    verify_chain_map,
    verify_homotopy,
)
from blobcx.hochschild import build_hochschild
from blobcx.linalg import SparseMatrix


def two_term():
    """0 -> Q -> Q -> 0 with the identity."""
    return ChainComplex({0: 1, 1: 1}, {1: SparseMatrix.identity(1)})


def point():
    return ChainComplex({0: 1})


def test_validate_trivial():
    assert validate(ChainComplex({})).passed
    assert validate(two_term()).passed


def test_validate_catches_bad_square():
    d1 = SparseMatrix.from_dense([[1]])
    d2 = SparseMatrix.from_dense([[1]])
    c = ChainComplex({0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})
    assert not validate(c).passed


def test_homology_small():
    assert betti_numbers(two_term()) == [0, 0]
    assert betti_numbers(ChainComplex({3: 1})) == [1]
    assert ChainComplex({3: 1}).d_min == 3


def test_homology_representatives_are_cycles():
    torus_like = tensor(_circle_cx(), _circle_cx())
    hs = homology(torus_like, representatives=True)
    assert [h.betti for h in hs] == [1, 2, 1]
    for k, h in zip(torus_like.degrees, hs):
        for z in h.representatives:
            assert torus_like.d(k).apply(z) == {}


def _circle_cx():
    # simplicial circle: two vertices, two edges
    d1 = SparseMatrix.from_dense([[-1, 1], [1, -1]])
    return ChainComplex({0: 2, 1: 2}, {1: d1})


def test_hochschild_of_ground_field():
    cx = build_hochschild(ground_field(), cap=4).complex
    assert betti_numbers(cx)[:4] == [1, 0, 0, 0]


def test_tensor_with_point_is_a_copy():
    c = _circle_cx()
    t = tensor(c, point())
    assert [t.dim(k) for k in t.degrees] == [2, 2]
    assert t.d(1) == c.d(1)


def test_tensor_of_two_term_complexes():
    t = tensor(two_term(), two_term())
    assert [t.dim(k) for k in t.degrees] == [1, 2, 1]
    assert validate(t).passed
    assert betti_numbers(t) == [0, 0, 0]


def test_tensor_of_intervals_matches_disjoint_union():
    A = truncated_polynomial(2)
    a = build_blob_complex(interval(1), A, cap=2).complex
    b = build_blob_complex(interval(2), A, cap=2).complex
    u = build_blob_complex(disjoint_union(interval(1), interval(2)), A, cap=2).complex
    t = tensor(a, b, cap=2)
    assert [t.dim(k) for k in range(3)] == [u.dim(k) for k in range(3)]
    assert betti_numbers(t)[:2] == betti_numbers(u)[:2]


def test_identity_map_and_zero_homotopy():
    c = _circle_cx()
    f = identity_map(c)
    assert verify_chain_map(f).passed
    assert verify_homotopy(ChainHomotopy(c), f, f).passed


def test_bad_chain_map_fails():
    c = _circle_cx()
    f = ChainMap(c, c, {0: SparseMatrix.identity(2), 1: SparseMatrix.zeros(2, 2)})
    assert not verify_chain_map(f).passed


def test_short_exact_block_maps():
    a, b = two_term(), _circle_cx()
    s = direct_sum(a, b)
    incl = ChainMap(a, s, {k: SparseMatrix.vstack([SparseMatrix.identity(a.dim(k)),
                                                   SparseMatrix.zeros(b.dim(k), a.dim(k))])
                           for k in (0, 1)})
    proj = ChainMap(s, b, {k: SparseMatrix.hstack([SparseMatrix.zeros(b.dim(k), a.dim(k)),
                                                   SparseMatrix.identity(b.dim(k))])
                           for k in (0, 1)})
    assert short_exact_check(incl, proj).passed
    zero = ChainMap(a, s, {})
    assert not short_exact_check(zero, proj).passed


def test_short_exact_hochschild_ideal():
    from blobcx.algebra import quotient_bimodule, sub_bimodule
    from blobcx.hochschild import induced_map

    A = truncated_polynomial(2)
    reg = regular_bimodule(A)
    sub, incl = sub_bimodule(reg, [A.basis(1)])
    quot, proj = quotient_bimodule(reg, [A.basis(1)])
    hs, hm, hq = (build_hochschild(A, m, 4) for m in (sub, reg, quot))
    rep = short_exact_check(induced_map(incl, hs, hm), induced_map(proj, hm, hq), degrees=range(5))
    assert rep.passed
