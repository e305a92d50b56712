from fractions import Fraction

import pytest

from blobcx.algebra import truncated_polynomial
from blobcx.blob import build_blob_complex, interval
from blobcx.linalg import (
    Inconsistent,
    PrimeField,
    SparseMatrix,
    Subspace,
    field_from_string,
    kernel_basis,
    quotient_projection,
    rank,
    solve,
    solve_many,
)


def test_rank_trivial_cases():
    assert rank(SparseMatrix.identity(2)) == 2
    assert rank(SparseMatrix.zeros(3, 3)) == 0


def test_multiplication_matrix_of_dual_numbers():
    m = truncated_polynomial(2).multiplication_matrix()
    assert m.shape == (2, 4)
    assert rank(m) == 2
    assert len(kernel_basis(m)) == 2


def test_kernel_of_identity_is_empty():
    assert kernel_basis(SparseMatrix.identity(4)) == []


def test_kernel_vectors_are_killed():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert m.apply(ker[0]) == {}


def test_solve_identity_and_zero():
    b = {0: Fraction(3, 7), 2: -1}
    assert solve(SparseMatrix.identity(3), b) == b
    assert solve(SparseMatrix.zeros(2, 2), {1: 1}) is Inconsistent


def test_solve_many_marks_each_inconsistent_rhs():
    m = SparseMatrix.from_dense([[1, 0], [0, 0]])
    sols = solve_many(m, [{0: 5}, {1: 1}, {0: 1, 1: 2}, {}])
    assert sols[0] == {0: 5}
    assert sols[1] is Inconsistent and sols[2] is Inconsistent
    assert sols[3] == {}


def test_interval_one_cycle_bounds():
    # 1-cycles of a ball complex bound; the preimage is re-multiplied to check
    cx = build_blob_complex(interval(3), truncated_polynomial(2), cap=3).complex
    cycles = kernel_basis(cx.d(1))
    assert cycles
    for z in cycles[:10]:
        x = solve(cx.d(2), z)
        assert x is not Inconsistent
        assert cx.d(2).apply(x) == z


def test_kernel_of_d1_contains_image_of_d2():
    cx = build_blob_complex(interval(3), truncated_polynomial(2), cap=3).complex
    ker = Subspace.kernel(cx.d(1))
    assert all(ker.contains(col) for col in cx.d(2).columns())


def test_quotient_projection_examples():
    P, basis = quotient_projection(2, [{0: 1}])
    assert len(basis) == 1 and P.shape == (1, 2)
    _, basis = quotient_projection(2, [{0: 1}, {1: 1}])
    assert basis == []
    m = truncated_polynomial(2).multiplication_matrix()
    P, basis = quotient_projection(4, kernel_basis(m))
    assert len(basis) == 2
    assert all(P.apply(v) == {} for v in kernel_basis(m))


def test_prime_field_arithmetic():
    f = field_from_string("p:7")
    assert isinstance(f, PrimeField) and f.characteristic == 7
    m = SparseMatrix.from_dense([[1, 2], [3, 6]], field=f)
    assert rank(m) == 1
    m = SparseMatrix.from_dense([[7, 0], [0, 1]], field=f)
    assert rank(m) == 1
    with pytest.raises(ValueError):
        field_from_string("reals")


def test_rationals_stay_exact():
    m = SparseMatrix.from_dense([[3, 1], [1, 3]])
    x = solve(m, {0: 1})
    assert x == {0: Fraction(3, 8), 1: Fraction(-1, 8)}
