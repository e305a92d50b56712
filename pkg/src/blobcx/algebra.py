"""Finite-dimensional unital algebras, bimodules and their evaluation maps.

Elements are sparse coordinate dicts over the algebra's (or module's) basis.
Tensor powers are indexed in mixed radix with the first factor most
significant, which is also the left-to-right reading order of a row of
labelled sites.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence

from .linalg import SparseMatrix, Subspace, axpy, default_field, quotient_projection
from .report import Report

__all__ = [
    "Algebra",
    "Bimodule",
    "validate",
    "validate_bimodule",
    "evaluate",
    "evaluation_matrix",
    "evaluation_kernel",
    "coinvariants",
    "free_bimodule",
    "regular_bimodule",
    "direct_sum",
    "sub_bimodule",
    "quotient_bimodule",
    "builtin",
    "BUILTIN_ALGEBRAS",
]


def _vec(v, field) -> dict:
    if isinstance(v, Mapping):
        return {int(k): field(x) for k, x in v.items() if x != 0}
    return {i: field(x) for i, x in enumerate(v) if x != 0}


class Algebra:
    """Unital associative algebra given by structure constants.

    ``products[(i, j)]`` is the coordinate vector of ``e_i * e_j``; missing
    pairs multiply to zero.
    """

    def __init__(
        self,
        dim: int,
        products: Mapping,
        unit,
        *,
        labels: Sequence[str] | None = None,
        involution=None,
        name: str = "algebra",
        field=None,
    ):
        self.field = field if field is not None else default_field()
        self.dim = int(dim)
        self.name = name
        self.basis_labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(self.dim))
        if len(self.basis_labels) != self.dim:
            raise ValueError("wrong number of basis labels")
        self._mul = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), v in products.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise IndexError(f"product index ({i}, {j}) out of range")
            w = _vec(v, self.field)
            if any(not 0 <= k < self.dim for k in w):
                raise IndexError(f"product e{i}*e{j} has a coordinate out of range")
            self._mul[i][j] = w
        self.unit = _vec(unit, self.field)
        if involution is not None and not isinstance(involution, SparseMatrix):
            involution = SparseMatrix.from_dense(involution, self.field)
        self.involution = involution

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim})"

    def product(self, i: int, j: int) -> dict:
        return self._mul[i][j]

    def basis(self, i: int) -> dict:
        return {i: self.field(1)}

    def mul(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for i, x in a.items():
            row = self._mul[i]
            for j, y in b.items():
                p = row[j]
                if p:
                    out = axpy(out, x * y, p, self.field)
        return out

    def structure_constants(self) -> dict:
        return {
            (i, j): dict(self._mul[i][j])
            for i in range(self.dim)
            for j in range(self.dim)
            if self._mul[i][j]
        }

    def star(self, a: Mapping) -> dict:
        if self.involution is None:
            raise ValueError(f"{self.name} has no involution")
        return self.involution.apply(a)

    def is_commutative(self) -> bool:
        return all(
            self._mul[i][j] == self._mul[j][i] for i in range(self.dim) for j in range(i)
        )

    def multiplication_matrix(self) -> SparseMatrix:
        return evaluation_matrix(self, 2)

    def tampered(self, i: int, j: int, value) -> "Algebra":
        """Copy with ``e_i * e_j`` replaced (used for mutation tests)."""
        prods = self.structure_constants()
        prods[(i, j)] = value
        return Algebra(
            self.dim, prods, self.unit, labels=self.basis_labels, name=self.name + "*",
            field=self.field,
        )


class Bimodule:
    """Two-sided module over an :class:`Algebra`.

    ``left[(i, m)]`` is the coordinate vector of ``e_i . m`` and
    ``right[(m, j)]`` that of ``m . e_j``.
    """

    def __init__(
        self,
        base: Algebra,
        dim: int,
        left: Mapping,
        right: Mapping,
        *,
        labels: Sequence[str] | None = None,
        name: str = "module",
    ):
        self.base = base
        self.field = base.field
        self.dim = int(dim)
        self.name = name
        self.basis_labels = tuple(labels) if labels else tuple(f"m{i}" for i in range(self.dim))
        d = base.dim
        self._left = [[{} for _ in range(self.dim)] for _ in range(d)]
        self._right = [[{} for _ in range(d)] for _ in range(self.dim)]
        for (i, m), v in left.items():
            self._left[i][m] = _vec(v, self.field)
        for (m, j), v in right.items():
            self._right[m][j] = _vec(v, self.field)
        for table in (self._left, self._right):
            for row in table:
                for v in row:
                    if any(not 0 <= k < self.dim for k in v):
                        raise IndexError("action coordinate out of range")

    def __repr__(self):
        return f"Bimodule({self.name!r}, dim={self.dim}, over {self.base.name!r})"

    def act_left(self, a: Mapping, m: Mapping) -> dict:
        out: dict = {}
        for i, x in a.items():
            row = self._left[i]
            for k, y in m.items():
                p = row[k]
                if p:
                    out = axpy(out, x * y, p, self.field)
        return out

    def act_right(self, m: Mapping, a: Mapping) -> dict:
        out: dict = {}
        for k, y in m.items():
            row = self._right[k]
            for j, x in a.items():
                p = row[j]
                if p:
                    out = axpy(out, x * y, p, self.field)
        return out

    def left_action(self) -> dict:
        return {(i, m): dict(v) for i, row in enumerate(self._left) for m, v in enumerate(row) if v}

    def right_action(self) -> dict:
        return {(m, j): dict(v) for m, row in enumerate(self._right) for j, v in enumerate(row) if v}


# ---------------------------------------------------------------------------
# validation


def _first(gen):
    return next(gen, None)


def validate(algebra: Algebra) -> Report:
    """Check associativity, unit laws and (if present) the involution."""
    rep = Report(title=f"validate {algebra.name}")
    d, e = algebra.dim, algebra.basis
    mul = algebra.mul

    bad = _first(
        (i, j, k)
        for i, j, k in itertools.product(range(d), repeat=3)
        if mul(mul(e(i), e(j)), e(k)) != mul(e(i), mul(e(j), e(k)))
    )
    rep.check("associativity", bad is None, "algebra-axioms", witness=bad)
    u = algebra.unit
    bad = _first(i for i in range(d) if mul(u, e(i)) != e(i) or mul(e(i), u) != e(i))
    rep.check("unit", bad is None, "algebra-axioms", witness=bad)
    if algebra.involution is not None:
        star = algebra.star
        bad = _first(i for i in range(d) if star(star(e(i))) != e(i))
        rep.check("involution-order-2", bad is None, "star-structure", witness=bad)
        bad = _first(
            (i, j)
            for i, j in itertools.product(range(d), repeat=2)
            if star(mul(e(i), e(j))) != mul(star(e(j)), star(e(i)))
        )
        rep.check("involution-anti-multiplicative", bad is None, "star-structure", witness=bad)
    return rep


def validate_bimodule(module: Bimodule) -> Report:
    rep = Report(title=f"validate {module.name}")
    A = module.base
    d, n = A.dim, module.dim
    e, m_ = A.basis, (lambda k: {k: module.field(1)})
    L, R = module.act_left, module.act_right
    bad = _first(
        (i, j, k)
        for i, j, k in itertools.product(range(d), range(d), range(n))
        if L(A.mul(e(i), e(j)), m_(k)) != L(e(i), L(e(j), m_(k)))
    )
    rep.check("left-associativity", bad is None, "bimodule-axioms", witness=bad)
    bad = _first(
        (k, i, j)
        for k, i, j in itertools.product(range(n), range(d), range(d))
        if R(m_(k), A.mul(e(i), e(j))) != R(R(m_(k), e(i)), e(j))
    )
    rep.check("right-associativity", bad is None, "bimodule-axioms", witness=bad)
    bad = _first(
        (i, k, j)
        for i, k, j in itertools.product(range(d), range(n), range(d))
        if R(L(e(i), m_(k)), e(j)) != L(e(i), R(m_(k), e(j)))
    )
    rep.check("actions-commute", bad is None, "bimodule-axioms", witness=bad)
    bad = _first(k for k in range(n) if L(A.unit, m_(k)) != m_(k) or R(m_(k), A.unit) != m_(k))
    rep.check("unit-acts-trivially", bad is None, "bimodule-axioms", witness=bad)
    return rep


# ---------------------------------------------------------------------------
# evaluation


def evaluate(algebra: Algebra, labels: Sequence, module: Bimodule | None = None,
             module_slot: int | Sequence[int] | None = None) -> dict:
    """Product of a row of labels read left to right.

    With a module, ``labels[module_slot]`` is a module element and the
    result is ``c_1 ... c_k . m . c'_1 ... c'_l`` in the module.
    """
    if isinstance(module_slot, Sequence):
        if len(module_slot) > 1:
            raise ValueError("at most one label may be a module element")
        module_slot = module_slot[0] if module_slot else None
    if (module is None) != (module_slot is None):
        raise ValueError("a module slot needs a module and vice versa")
    f = algebra.field
    labels = [_vec(x, f) for x in labels]
    if module is None:
        acc = dict(algebra.unit)
        for x in labels:
            acc = algebra.mul(acc, x)
        return acc
    if not 0 <= module_slot < len(labels):
        raise IndexError("module slot out of range")
    acc = dict(algebra.unit)
    for x in labels[:module_slot]:
        acc = algebra.mul(acc, x)
    out = module.act_left(acc, labels[module_slot])
    for x in labels[module_slot + 1:]:
        out = module.act_right(out, x)
    return out


@lru_cache(maxsize=None)
def evaluation_matrix(algebra: Algebra, k: int, module: Bimodule | None = None,
                      split: tuple[int, int] | None = None) -> SparseMatrix:
    """Matrix of ``C^{k_l} (x) M (x) C^{k_r} -> M`` (or ``C^k -> C``)."""
    d = algebra.dim
    if module is None:
        if k < 1:
            raise ValueError("need at least one factor")
        factors = [d] * k
        slot, target = None, d
    else:
        kl, kr = split if split is not None else (0, k)
        factors = [d] * kl + [module.dim] + [d] * kr
        slot, target = kl, module.dim
    cols: dict[int, dict] = {}
    last = len(factors)

    def rec(pos: int, index: int, state: dict) -> None:
        if pos == last:
            cols[index] = state
            return
        size = factors[pos]
        for b in range(size):
            if slot is None or pos < slot:
                new = _mul_basis(algebra, state, b)
            elif pos == slot:
                new = module.act_left(state, {b: 1})
            else:
                new = _act_right_basis(module, state, b)
            if new:
                rec(pos + 1, index * size + b, new)

    rec(0, 0, dict(algebra.unit))
    ncols = 1
    for s in factors:
        ncols *= s
    entries = [(i, j, v) for j, col in cols.items() for i, v in col.items()]
    return SparseMatrix(target, ncols, entries, algebra.field)


def _mul_basis(algebra: Algebra, a: dict, b: int) -> dict:
    out: dict = {}
    for i, x in a.items():
        p = algebra._mul[i][b]
        if p:
            out = axpy(out, x, p, algebra.field)
    return out


def _act_right_basis(module: Bimodule, m: dict, b: int) -> dict:
    out: dict = {}
    for k, x in m.items():
        p = module._right[k][b]
        if p:
            out = axpy(out, x, p, module.field)
    return out


@lru_cache(maxsize=None)
def evaluation_kernel(algebra: Algebra, k: int, module: Bimodule | None = None,
                      split: tuple[int, int] | None = None) -> Subspace:
    """Kernel of the evaluation map: the local relations on a row of sites."""
    return Subspace.kernel(evaluation_matrix(algebra, k, module, split))


class Coinvariants(NamedTuple):
    relations: Subspace
    dim: int
    projection: SparseMatrix


def coinvariants(module: Bimodule) -> Coinvariants:
    """``M / <c m - m c>`` with its projection matrix."""
    A = module.base
    rels = []
    for i in range(A.dim):
        for k in range(module.dim):
            v = axpy(module._left[i][k], -1, module._right[k][i], module.field)
            if v:
                rels.append(v)
    sub = Subspace.span(module.dim, rels, module.field)
    P, basis = quotient_projection(module.dim, sub.basis, module.field)
    return Coinvariants(sub, len(basis), P)


# ---------------------------------------------------------------------------
# constructions


def regular_bimodule(algebra: Algebra) -> Bimodule:
    d = algebra.dim
    prods = {(i, j): algebra.product(i, j) for i in range(d) for j in range(d)}
    return Bimodule(
        algebra, d, prods, prods, labels=algebra.basis_labels, name=f"{algebra.name} (regular)",
    )


def free_bimodule(algebra: Algebra) -> Bimodule:
    """``C (x) C`` with ``a.(x (x) y).b = ax (x) yb``; basis index ``x*d + y``."""
    d = algebra.dim
    left, right = {}, {}
    for a in range(d):
        for x in range(d):
            for y in range(d):
                p = algebra.product(a, x)
                if p:
                    left[(a, x * d + y)] = {k * d + y: v for k, v in p.items()}
                q = algebra.product(y, a)
                if q:
                    right[(x * d + y, a)] = {x * d + k: v for k, v in q.items()}
    labels = [f"{algebra.basis_labels[x]}|{algebra.basis_labels[y]}" for x in range(d) for y in range(d)]
    return Bimodule(algebra, d * d, left, right, labels=labels, name=f"{algebra.name} (free)")


def direct_sum(m1: Bimodule, m2: Bimodule) -> Bimodule:
    if m1.base is not m2.base:
        raise ValueError("direct sum needs a common base algebra")
    n1 = m1.dim
    shift = lambda v: {k + n1: x for k, x in v.items()}
    left = dict(m1.left_action())
    right = dict(m1.right_action())
    for (i, m), v in m2.left_action().items():
        left[(i, m + n1)] = shift(v)
    for (m, j), v in m2.right_action().items():
        right[(m + n1, j)] = shift(v)
    return Bimodule(m1.base, n1 + m2.dim, left, right,
                    labels=m1.basis_labels + m2.basis_labels, name=f"{m1.name} + {m2.name}")


def sub_bimodule(module: Bimodule, vectors: Sequence) -> tuple[Bimodule, SparseMatrix]:
    """Sub-bimodule spanned by ``vectors`` and its inclusion matrix."""
    A = module.base
    sub = Subspace.span(module.dim, vectors, module.field)
    left, right = {}, {}
    for s, b in enumerate(sub.basis):
        for i in range(A.dim):
            for side, img in (("l", module.act_left({i: 1}, b)), ("r", module.act_right(b, {i: 1}))):
                if not sub.contains(img):
                    raise ValueError("span is not closed under the actions")
                coords = {t: c for t, c in enumerate(sub.coordinates(img)) if c}
                if coords:
                    (left if side == "l" else right)[(i, s) if side == "l" else (s, i)] = coords
    out = Bimodule(A, sub.dim, left, right, name=f"sub({module.name})")
    return out, sub.matrix()


def quotient_bimodule(module: Bimodule, vectors: Sequence) -> tuple[Bimodule, SparseMatrix]:
    """``module / span(vectors)`` and its projection matrix."""
    A = module.base
    sub = Subspace.span(module.dim, vectors, module.field)
    P, basis = quotient_projection(module.dim, sub.basis, module.field)
    reps = [min(b) for b in basis]
    left, right = {}, {}
    for q, j in enumerate(reps):
        for i in range(A.dim):
            img = P.apply(module.act_left({i: 1}, {j: 1}))
            if img:
                left[(i, q)] = img
            img = P.apply(module.act_right({j: 1}, {i: 1}))
            if img:
                right[(q, i)] = img
    labels = [module.basis_labels[j] for j in reps]
    out = Bimodule(A, len(reps), left, right, labels=labels, name=f"quot({module.name})")
    # the projection must intertwine the actions
    for i in range(A.dim):
        for k in range(module.dim):
            e_i, e_k = {i: 1}, {k: 1}
            if (P.apply(module.act_left(e_i, e_k)) != out.act_left(e_i, P.apply(e_k))
                    or P.apply(module.act_right(e_k, e_i)) != out.act_right(P.apply(e_k), e_i)):
                raise ValueError("span is not a sub-bimodule")
    return out, P


# ---------------------------------------------------------------------------
# builtins


def ground_field(field=None) -> Algebra:
    return Algebra(1, {(0, 0): [1]}, [1], labels=["1"], involution=[[1]],
                   name="ground_field", field=field)


def truncated_polynomial(n: int, field=None) -> Algebra:
    """``Q[x]/(x^n)`` with basis ``1, x, ..., x^{n-1}``."""
    if n < 1:
        raise ValueError("need n >= 1")
    prods = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    labels = ["1"] + ["x" if i == 1 else f"x^{i}" for i in range(1, n)]
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    return Algebra(n, prods, {0: 1}, labels=labels, involution=ident, name=f"truncated_polynomial({n})",
                   field=field)


def matrix_algebra(n: int, field=None) -> Algebra:
    """``M_n(Q)`` on matrix units ``e_ij`` (index ``i*n + j``)."""
    prods = {}
    for i, j, l in itertools.product(range(n), repeat=3):
        prods[(i * n + j, j * n + l)] = {i * n + l: 1}
    unit = {i * n + i: 1 for i in range(n)}
    transpose = [[int(r == (c % n) * n + c // n) for c in range(n * n)] for r in range(n * n)]
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return Algebra(n * n, prods, unit, labels=labels, involution=transpose,
                   name=f"matrix_algebra({n})", field=field)


def cyclic_group_algebra(n: int, field=None) -> Algebra:
    prods = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    inv = [[int(r == (-c) % n) for c in range(n)] for r in range(n)]
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return Algebra(n, prods, {0: 1}, labels=labels, involution=inv, name=f"group_algebra(cyclic {n})",
                   field=field)


def symmetric3_group_algebra(field=None) -> Algebra:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    compose = lambda p, q: tuple(p[q[i]] for i in range(3))
    inverse = lambda p: tuple(sorted(range(3), key=lambda i: p[i]))
    prods = {(index[p], index[q]): {index[compose(p, q)]: 1} for p in perms for q in perms}
    inv = [[int(index[inverse(perms[c])] == r) for c in range(6)] for r in range(6)]

    labels = ["".join(str(i + 1) for i in p) for p in perms]
    return Algebra(6, prods, {index[(0, 1, 2)]: 1}, labels=labels, involution=inv,
                   name="group_algebra(symmetric 3)", field=field)


def builtin(name: str, *params, field=None):
    """Look up a builtin algebra or bimodule by name.

    ``builtin("truncated_polynomial", 2)``, ``builtin("group_algebra", "cyclic", 3)``,
    ``builtin("free_bimodule", algebra)``.
    """
    if name == "ground_field":
        return ground_field(field)
    if name == "truncated_polynomial":
        return truncated_polynomial(int(params[0]) if params else 2, field)
    if name == "matrix_algebra":
        return matrix_algebra(int(params[0]) if params else 2, field)
    if name == "group_algebra":
        kind = params[0] if params else "cyclic"
        if kind == "cyclic":
            return cyclic_group_algebra(int(params[1]) if len(params) > 1 else 3, field)
        if kind == "symmetric" and (len(params) < 2 or int(params[1]) == 3):
            return symmetric3_group_algebra(field)
        raise ValueError(f"unsupported group algebra {params!r}")
    if name in ("free_bimodule", "regular_bimodule"):
        if not params or not isinstance(params[0], Algebra):
            raise ValueError(f"{name} needs an algebra parameter")
        return free_bimodule(params[0]) if name == "free_bimodule" else regular_bimodule(params[0])
    raise ValueError(f"unknown builtin {name!r}")


#: The algebras exercised by the acceptance suite.
BUILTIN_ALGEBRAS = (
    ("ground_field",),
    ("truncated_polynomial", 2),
    ("truncated_polynomial", 3),
    ("matrix_algebra", 2),
    ("group_algebra", "cyclic", 3),
)
