import pytest

from blobcx.algebra import builtin, ground_field, matrix_algebra, truncated_polynomial


@pytest.fixture(autouse=True)
def _rationals(monkeypatch):
    # the goldens below are over Q; a stray BLOB_FIELD must not leak in
    monkeypatch.delenv("BLOB_FIELD", raising=False)


@pytest.fixture
def Q():
    return ground_field()


@pytest.fixture
def T2():
    return truncated_polynomial(2)


@pytest.fixture
def M2():
    return matrix_algebra(2)


@pytest.fixture
def C3():
    return builtin("group_algebra", "cyclic", 3)
