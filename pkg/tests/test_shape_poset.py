import itertools

import pytest

from blobcx.blob import Arc, circle, enumerate_configurations, interval
from blobcx.blob.manifold import canonical
from blobcx.blob.poset import PosetTooLarge, mobius_bounded, order_complex_homology, splitting_poset
from blobcx.blob.shape import PT, brute_force_faces, cube_f_vector, f_vector, shape, simplex_f_vector
from blobcx.linalg import SparseMatrix, rank


def test_empty_configuration_is_a_point():
    assert shape(interval(3), ()) == PT
    assert f_vector(PT) == [1]


@pytest.mark.parametrize("k", range(1, 5))
def test_nested_is_simplex(k):
    m = interval(8)
    s = shape(m, canonical(m, [Arc(i, 8 - i) for i in range(k)]))
    assert s.dim == k
    assert f_vector(s) == simplex_f_vector(k) == brute_force_faces(s)


@pytest.mark.parametrize("k", range(1, 5))
def test_disjoint_is_cube(k):
    m = interval(8)
    s = shape(m, canonical(m, [Arc(i, i + 1) for i in range(k)]))
    assert f_vector(s) == cube_f_vector(k) == brute_force_faces(s)


def test_reference_f_vectors():
    assert simplex_f_vector(2) == [3, 3, 1]
    assert cube_f_vector(2) == [4, 4, 1]
    assert cube_f_vector(3) == [8, 12, 6, 1]


def test_mixed_shapes_match_brute_force():
    for m in (interval(4), circle(3)):
        for k in range(4):
            for c in enumerate_configurations(m, k):
                s = shape(m, c)
                assert s.dim == k
                assert f_vector(s) == brute_force_faces(s)


def _nerve_reduced_betti(elements, leq):
    """Reduced homology of the order complex, assembled from scratch."""
    less = lambda a, b: a != b and leq(a, b)
    simplices = {-1: [()]}
    for size in range(1, len(elements) + 1):
        found = []
        for combo in itertools.combinations(range(len(elements)), size):
            pts = [elements[i] for i in combo]
            if all(less(x, y) or less(y, x) for x, y in itertools.combinations(pts, 2)):
                found.append(combo)
        if not found:
            break
        simplices[size - 1] = found
    top = max(simplices)
    ranks = {}
    for k in range(0, top + 1):
        index = {s: i for i, s in enumerate(simplices[k - 1])}
        entries = [(index[s[:i] + s[i + 1:]], c, (-1) ** i)
                   for c, s in enumerate(simplices[k]) for i in range(len(s))]
        ranks[k] = rank(SparseMatrix(len(simplices[k - 1]), len(simplices[k]), entries))
    return [len(simplices[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(-1, top + 1)]


def test_circle4_nerve_by_brute_force():
    gaps = range(4)
    cuts = [frozenset(s) for r in range(1, 5) for s in itertools.combinations(gaps, r)]
    betti = _nerve_reduced_betti(cuts, lambda a, b: a >= b)
    assert all(b == 0 for b in betti)
    p = splitting_poset(circle(4))
    assert len(p.elements) == len(cuts)
    assert all(b == 0 for b in order_complex_homology(p))


def test_brute_force_nerve_sees_a_sphere():
    # sanity for the oracle: the face poset of a triangle boundary is a circle
    verts = [frozenset([i]) for i in range(3)]
    edges = [frozenset(e) for e in itertools.combinations(range(3), 2)]
    betti = _nerve_reduced_betti(verts + edges, lambda a, b: a <= b)
    assert betti == [0, 0, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_splitting_posets_contractible(n):
    for m in (interval(n), circle(n)):
        p = splitting_poset(m)
        assert all(b == 0 for b in order_complex_homology(p))
        assert mobius_bounded(p) == 0


def test_poset_limit():
    with pytest.raises(PosetTooLarge):
        splitting_poset(circle(8), limit=10)
