"""Exact sparse linear algebra over Q or a prime field.

Vectors are sparse dicts ``{index: value}`` with no stored zeros.  Over the
rationals a value is an ``int`` when integral and a ``Fraction`` otherwise;
over GF(p) it is an ``int`` in ``range(p)``.

Elimination over Q is fraction free: rows are kept as primitive integer
vectors and only normalised to Fractions when a reduced echelon form is
requested.  Pivots are chosen deterministically (rows in input order, the
smallest live column of each row), so every basis returned here is
reproducible.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "RationalField",
    "PrimeField",
    "QQ",
    "default_field",
    "field_from_string",
    "SparseMatrix",
    "Subspace",
    "Inconsistent",
    "rank",
    "kernel_basis",
    "solve",
    "solve_many",
    "quotient_projection",
    "rref",
]


class RationalField:
    """The rationals, with ints standing in for integral values."""

    name = "Q"
    characteristic = 0

    def __call__(self, x) -> int | Fraction:
        if isinstance(x, int):
            return x
        if isinstance(x, (tuple, list)):
            x = Fraction(int(x[0]), int(x[1]))
        elif isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        else:
            x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("division by zero in Q")
        return self(Fraction(1) / x)

    def div(self, a, b):
        return self(Fraction(a) * Fraction(self.inv(b)))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) with elements represented by ints in ``range(p)``."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p

    def __call__(self, x) -> int:
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, (tuple, list)):
            x = Fraction(int(x[0]), int(x[1]))
        elif isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
        return x.numerator * pow(x.denominator, -1, p) % p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return pow(x, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def field_from_string(text: str | None):
    """Parse ``"Q"`` or ``"p:7"`` (the BLOB_FIELD syntax)."""
    if not text or text.strip().upper() in ("Q", "QQ"):
        return QQ
    text = text.strip()
    if text.lower().startswith("p:"):
        return PrimeField(int(text[2:]))
    raise ValueError(f"unrecognised field {text!r}; expected 'Q' or 'p:<prime>'")


def default_field():
    return field_from_string(os.environ.get("BLOB_FIELD"))


class _InconsistentType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "Inconsistent"


#: Returned by :func:`solve` when the right hand side is not in the image.
Inconsistent = _InconsistentType()


# ---------------------------------------------------------------------------
# sparse vector helpers


def _clean(vec: dict, field) -> dict:
    # reduce first: in GF(p) a nonzero integer can vanish
    out = {}
    for k, v in vec.items():
        if v != 0:
            v = field(v)
            if v != 0:
                out[k] = v
    return out


def axpy(y: dict, a, x: Mapping, field) -> dict:
    """Return ``y + a*x`` as a new dict."""
    out = dict(y)
    if field.characteristic:
        p = field.p
        for k, v in x.items():
            s = (out.get(k, 0) + a * v) % p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    else:
        for k, v in x.items():
            s = out.get(k, 0) + a * v
            if s:
                out[k] = s.numerator if isinstance(s, Fraction) and s.denominator == 1 else s
            else:
                out.pop(k, None)
    return out


def _to_sparse(v, field) -> dict:
    if isinstance(v, Mapping):
        return _clean(dict(v), field)
    return {i: field(x) for i, x in enumerate(v) if x != 0}


# ---------------------------------------------------------------------------
# elimination kernels


def _primitive(row: dict) -> dict:
    g = reduce(math.gcd, row.values())
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _integral(row: Mapping) -> dict:
    """Scale a rational sparse row to a primitive integer row."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    if den == 1:
        out = {k: int(v) for k, v in row.items() if v}
    else:
        out = {k: int(v * den) for k, v in row.items() if v}
    return _primitive(out) if out else out


class _Echelon:
    """Incremental row echelon form with smallest-column pivots."""

    def __init__(self, field):
        self.field = field
        self.pivots: dict[int, dict] = {}
        self.order: list[int] = []

    def _combine(self, r: dict, piv: dict, c: int) -> dict:
        if self.field.characteristic:
            # pivot rows are monic
            return axpy(r, (-r[c]) % self.field.p, piv, self.field)
        a = piv[c]
        b = r[c]
        if a == 1:
            out = dict(r)
            for k, v in piv.items():
                s = out.get(k, 0) - b * v
                if s:
                    out[k] = s
                else:
                    del out[k]
            return _primitive(out) if out else out
        g = math.gcd(a, b)
        a //= g
        b //= g
        out = {k: a * v for k, v in r.items()}
        for k, v in piv.items():
            s = out.get(k, 0) - b * v
            if s:
                out[k] = s
            else:
                del out[k]
        return _primitive(out) if out else out

    def reduce(self, row: dict) -> dict:
        """Reduce leading entries of ``row`` against the stored pivots."""
        pivots = self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                return row
            row = self._combine(row, piv, c)
        return row

    def prepare(self, row: Mapping) -> dict:
        if self.field.characteristic:
            return {k: v % self.field.p for k, v in row.items() if v % self.field.p}
        return _integral(row)

    def add(self, row: Mapping) -> int | None:
        """Insert a row; return its new pivot column or None if dependent."""
        r = self.reduce(self.prepare(row))
        if not r:
            return None
        c = min(r)
        if self.field.characteristic:
            inv = self.field.inv(r[c])
            r = {k: v * inv % self.field.p for k, v in r.items()}
        elif r[c] < 0:
            r = {k: -v for k, v in r.items()}
        self.pivots[c] = r
        self.order.append(c)
        return c

    def reduced_rows(self) -> list[tuple[int, dict]]:
        """Fully reduced, monic pivot rows sorted by pivot column."""
        field = self.field
        cols = sorted(self.pivots)
        rows: dict[int, dict] = {}
        for c in cols:
            r = self.pivots[c]
            lead = r[c]
            if field.characteristic:
                rows[c] = dict(r)
            elif lead == 1:
                rows[c] = dict(r)
            else:
                rows[c] = {k: field(Fraction(v, lead)) for k, v in r.items()}
        # back substitution, highest pivot first
        for c in reversed(cols):
            pr = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r2 = rows[c2]
                v = r2.get(c)
                if v:
                    rows[c2] = axpy(r2, -v, pr, field)
        return [(c, rows[c]) for c in cols]


# ---------------------------------------------------------------------------
# SparseMatrix


class SparseMatrix:
    """Immutable sparse matrix with exact entries, stored by rows."""

    __slots__ = ("nrows", "ncols", "field", "_rows", "_t")

    def __init__(self, nrows: int, ncols: int, entries=(), field=None):
        self.field = field if field is not None else default_field()
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        rows: dict[int, dict] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for item in items:
            if isinstance(entries, Mapping):
                (i, j), v = item
            else:
                i, j, v = item
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
            r = rows.setdefault(i, {})
            r[j] = r.get(j, 0) + v
        self._rows = {}
        for i, r in rows.items():
            r = _clean(r, self.field)
            if r:
                self._rows[i] = r
        self._t = None

    @classmethod
    def _raw(cls, nrows, ncols, rows: dict, field) -> "SparseMatrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.field, m._rows, m._t = nrows, ncols, field, rows, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence, ncols: int, field=None) -> "SparseMatrix":
        field = field if field is not None else default_field()
        data = {}
        for i, r in enumerate(rows):
            r = _to_sparse(r, field)
            if any(not 0 <= j < ncols for j in r):
                raise IndexError("column index out of range")
            if r:
                data[i] = r
        return cls._raw(len(rows), ncols, data, field)

    @classmethod
    def from_columns(cls, columns: Sequence, nrows: int, field=None) -> "SparseMatrix":
        return cls.from_rows(columns, nrows, field).T

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field=None) -> "SparseMatrix":
        ncols = len(rows[0]) if rows else 0
        return cls.from_rows(rows, ncols, field)

    @classmethod
    def identity(cls, n: int, field=None) -> "SparseMatrix":
        field = field if field is not None else default_field()
        return cls._raw(n, n, {i: {i: field(1)} for i in range(n)}, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field=None) -> "SparseMatrix":
        return cls._raw(nrows, ncols, {}, field if field is not None else default_field())

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, i: int) -> dict:
        return dict(self._rows.get(i, {}))

    def column(self, j: int) -> dict:
        return self.T.row(j)

    def rows(self) -> list[dict]:
        return [dict(self._rows.get(i, {})) for i in range(self.nrows)]

    def columns(self) -> list[dict]:
        return self.T.rows()

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for i in sorted(self._rows):
            r = self._rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows.get(i, {}).get(j, 0)

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in self._rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    @property
    def T(self) -> "SparseMatrix":
        if self._t is None:
            cols: dict[int, dict] = {}
            for i, r in self._rows.items():
                for j, v in r.items():
                    cols.setdefault(j, {})[i] = v
            t = SparseMatrix._raw(self.ncols, self.nrows, cols, self.field)
            t._t = self
            self._t = t
        return self._t

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz}, {self.field!r})"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            new = axpy(rows.get(i, {}), 1, r, self.field)
            if new:
                rows[i] = new
            else:
                rows.pop(i, None)
        return SparseMatrix._raw(self.nrows, self.ncols, rows, self.field)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        c = self.field(c)
        if c == 0:
            return SparseMatrix.zeros(self.nrows, self.ncols, self.field)
        f = self.field
        rows = {i: {j: f(v * c) for j, v in r.items()} for i, r in self._rows.items()}
        return SparseMatrix._raw(self.nrows, self.ncols, rows, self.field)

    def apply(self, vec) -> dict:
        """Matrix times a (sparse or dense) column vector, as a sparse dict."""
        v = vec if isinstance(vec, Mapping) else _to_sparse(vec, self.field)
        out = {}
        f = self.field
        for i, r in self._rows.items():
            s = 0
            if len(v) < len(r):
                for j, x in v.items():
                    y = r.get(j)
                    if y:
                        s += x * y
            else:
                for j, y in r.items():
                    x = v.get(j)
                    if x:
                        s += x * y
            if s:
                s = f(s)
                if s:
                    out[i] = s
        return out

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            rows = {}
            orows = other._rows
            for i, r in self._rows.items():
                acc: dict = {}
                for k, a in r.items():
                    ok = orows.get(k)
                    if ok:
                        acc = axpy(acc, a, ok, self.field) if len(ok) > 32 else _acc(acc, a, ok)
                acc = _clean(acc, self.field)
                if acc:
                    rows[i] = acc
            return SparseMatrix._raw(self.nrows, other.ncols, rows, self.field)
        return self.apply(other)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        rows = {}
        f = self.field
        for i, r in self._rows.items():
            for i2, r2 in other._rows.items():
                rows[i * other.nrows + i2] = {
                    j * other.ncols + j2: f(a * b) for j, a in r.items() for j2, b in r2.items()
                }
        return SparseMatrix._raw(self.nrows * other.nrows, self.ncols * other.ncols, rows, f)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        cmap = {c: k for k, c in enumerate(cols)}
        data = {}
        for k, i in enumerate(rows):
            r = self._rows.get(i)
            if r:
                new = {cmap[j]: v for j, v in r.items() if j in cmap}
                if new:
                    data[k] = new
        return SparseMatrix._raw(len(rows), len(cols), data, self.field)

    @staticmethod
    def block_diag(blocks: Sequence["SparseMatrix"], field=None) -> "SparseMatrix":
        field = field or (blocks[0].field if blocks else default_field())
        rows, r0, c0 = {}, 0, 0
        for b in blocks:
            for i, r in b._rows.items():
                rows[r0 + i] = {c0 + j: v for j, v in r.items()}
            r0 += b.nrows
            c0 += b.ncols
        return SparseMatrix._raw(r0, c0, rows, field)

    @staticmethod
    def hstack(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        nrows = blocks[0].nrows
        rows: dict[int, dict] = {}
        c0 = 0
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError("hstack row mismatch")
            for i, r in b._rows.items():
                rows.setdefault(i, {}).update({c0 + j: v for j, v in r.items()})
            c0 += b.ncols
        return SparseMatrix._raw(nrows, c0, rows, blocks[0].field)

    @staticmethod
    def vstack(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        return SparseMatrix.hstack([b.T for b in blocks]).T


def _acc(acc: dict, a, row: Mapping) -> dict:
    for k, v in row.items():
        acc[k] = acc.get(k, 0) + a * v
    return acc


# ---------------------------------------------------------------------------
# operations


def rref(rows: Iterable[Mapping], field=None) -> list[tuple[int, dict]]:
    """Reduced row echelon form of the span of ``rows``.

    Returns ``[(pivot_col, row), ...]`` sorted by pivot column; each row is
    monic at its pivot and vanishes at every other pivot column.
    """
    field = field if field is not None else default_field()
    ech = _Echelon(field)
    for r in rows:
        ech.add(r)
    return ech.reduced_rows()


def rank(m: SparseMatrix) -> int:
    """Exact rank.  Eliminates along the shorter side."""
    ech = _Echelon(m.field)
    src = m if m.nrows <= m.ncols else m.T
    r = 0
    for i in range(src.nrows):
        row = src._rows.get(i)
        if row and ech.add(row) is not None:
            r += 1
    return r


def kernel_basis(m: SparseMatrix) -> list[dict]:
    """Basis of ``{x : m x = 0}`` in reduced echelon form (sparse vectors)."""
    f = m.field
    red = rref((m._rows[i] for i in sorted(m._rows)), f)
    pivot_cols = {c for c, _ in red}
    vecs = []
    for free in range(m.ncols):
        if free in pivot_cols:
            continue
        v = {free: f(1)}
        for c, r in red:
            x = r.get(free)
            if x:
                v[c] = f(-x)
        vecs.append(v)
    basis = [r for _, r in rref(vecs, f)]
    if len(basis) != m.ncols - len(red):
        raise AssertionError("rank-nullity violated")
    return basis


def solve(m: SparseMatrix, b):
    """Some x with ``m @ x == b``, or :data:`Inconsistent`.

    Free variables are set to zero, so the answer is deterministic.
    """
    f = m.field
    bv = b if isinstance(b, Mapping) else _to_sparse(b, f)
    if any(not 0 <= i < m.nrows for i in bv):
        raise IndexError("right hand side has the wrong length")
    aug = m.ncols
    rows = []
    for i in range(m.nrows):
        r = dict(m._rows.get(i, {}))
        if bv.get(i):
            r[aug] = bv[i]
        if r:
            rows.append(r)
    x = {}
    for c, r in rref(rows, f):
        if c == aug:
            return Inconsistent
        val = r.get(aug)
        if val:
            x[c] = val
    return x


def solve_many(m: SparseMatrix, bs: Sequence) -> list:
    """:func:`solve` for several right hand sides with one elimination."""
    f = m.field
    bvs = [b if isinstance(b, Mapping) else _to_sparse(b, f) for b in bs]
    aug = m.ncols
    rows: dict[int, dict] = {i: dict(r) for i, r in m._rows.items()}
    for j, bv in enumerate(bvs):
        for i, v in bv.items():
            if not 0 <= i < m.nrows:
                raise IndexError("right hand side has the wrong length")
            if v:
                rows.setdefault(i, {})[aug + j] = v
    xs: list = [{} for _ in bvs]
    for c, r in rref((rows[i] for i in sorted(rows)), f):
        if c >= aug:
            # a row with no coefficient part: every rhs touching it fails
            for j, v in r.items():
                if v:
                    xs[j - aug] = Inconsistent
            continue
        for j, v in r.items():
            if j >= aug and v and xs[j - aug] is not Inconsistent:
                xs[j - aug][c] = v
    return xs


def quotient_projection(ambient_dim: int, subspace: Iterable, field=None):
    """Projection onto ``F^n / span(subspace)``.

    Returns ``(P, quotient_basis)`` where the quotient basis consists of the
    standard vectors at the non-pivot columns of the subspace's reduced
    echelon form and ``P`` (q x n) sends a vector to its quotient coordinates.
    """
    field = field if field is not None else default_field()
    vecs = []
    for v in subspace:
        if isinstance(v, Mapping):
            if any(not 0 <= k < ambient_dim for k in v):
                raise ValueError("subspace vector outside the ambient space")
            vecs.append(_clean(dict(v), field))
        else:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            vecs.append(_to_sparse(v, field))
    red = rref(vecs, field)
    pivots = {c for c, _ in red}
    free = [j for j in range(ambient_dim) if j not in pivots]
    fidx = {j: k for k, j in enumerate(free)}
    entries = [(k, j, 1) for k, j in enumerate(free)]
    for c, r in red:
        for j, v in r.items():
            if j in fidx:
                entries.append((fidx[j], c, -v))
    P = SparseMatrix(len(free), ambient_dim, entries, field)
    basis = [{j: field(1)} for j in free]
    return P, basis


@dataclass(eq=False)
class Subspace:
    """A subspace of ``field^ambient_dim`` held as a reduced echelon basis.

    ``pivots[i]`` is the pivot column of ``basis[i]``; the coordinates of a
    vector in the subspace are simply its entries at the pivot columns.
    """

    ambient_dim: int
    basis: tuple
    pivots: tuple
    field: object = QQ

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable, field=None) -> "Subspace":
        field = field if field is not None else default_field()
        vecs = [_to_sparse(v, field) for v in vectors]
        for v in vecs:
            if any(not 0 <= k < ambient_dim for k in v):
                raise ValueError("vector outside the ambient space")
        red = rref(vecs, field)
        return cls(ambient_dim, tuple(r for _, r in red), tuple(c for c, _ in red), field)

    @classmethod
    def kernel(cls, m: SparseMatrix) -> "Subspace":
        basis = kernel_basis(m)
        return cls(m.ncols, tuple(basis), tuple(min(v) for v in basis), m.field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Mapping) -> list:
        return [v.get(p, 0) for p in self.pivots]

    def contains(self, v) -> bool:
        v = _to_sparse(v, self.field)
        rest = dict(v)
        for p, b in zip(self.pivots, self.basis):
            c = v.get(p)
            if c:
                rest = axpy(rest, -c, b, self.field)
        return not rest

    def matrix(self) -> SparseMatrix:
        """Basis vectors as columns (ambient_dim x dim)."""
        return SparseMatrix.from_columns(list(self.basis), self.ambient_dim, self.field)
