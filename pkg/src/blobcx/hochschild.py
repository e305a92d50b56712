"""Hochschild complexes of bimodules and an independent periodic-resolution oracle.

Degree ``k`` of the complex is ``M (x) C^{(x)k}``; the basis vector
``m (x) a_1 (x) ... (x) a_k`` sits at index ``m * d**k + (a_1 ... a_k)_d``
where ``(.)_d`` reads the algebra indices as base-``d`` digits, ``a_1`` most
significant.  The differential is the unreduced cyclic bar differential

    d(m|a1|...|ak) = m a1|a2|...|ak
                   + sum_{i=1}^{k-1} (-1)^i m|...|a_i a_{i+1}|...
                   + (-1)^k a_k m|a1|...|a_{k-1}
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    Algebra,
    Bimodule,
    coinvariants,
    direct_sum as bimodule_direct_sum,
    free_bimodule,
    quotient_bimodule,
    regular_bimodule,
    sub_bimodule,
)
from .chain import ChainComplex, ChainMap, betti_numbers, short_exact_check, validate
from .linalg import SparseMatrix, Subspace, default_field, rank
from .report import Report

__all__ = [
    "HochschildComplex",
    "build_hochschild",
    "hh",
    "induced_map",
    "periodic_resolution",
    "small_resolution_hh",
    "generated_ideal",
    "property_suite",
]


class _Tags(Sequence):
    """Lazy ``m|a|b`` labels for one degree."""

    def __init__(self, module: Bimodule, algebra: Algebra, k: int):
        self.module, self.algebra, self.k = module, algebra, k
        self._n = module.dim * algebra.dim ** k

    def __len__(self):
        return self._n

    def __getitem__(self, idx):
        if not 0 <= idx < self._n:
            raise IndexError(idx)
        m, digits = _decode(idx, self.algebra.dim, self.k)
        parts = [self.module.basis_labels[m]] + [self.algebra.basis_labels[a] for a in digits]
        return "|".join(parts)


def _decode(idx: int, d: int, k: int) -> tuple[int, list[int]]:
    digits = [0] * k
    for pos in range(k - 1, -1, -1):
        idx, digits[pos] = divmod(idx, d)
    return idx, digits


@dataclass
class HochschildComplex:
    algebra: Algebra
    module: Bimodule
    cap: int
    complex: ChainComplex

    @property
    def dims(self) -> list[int]:
        return [self.complex.dim(k) for k in range(self.cap + 1)]

    def index(self, m: int, labels: Sequence[int]) -> int:
        d = self.algebra.dim
        idx = m
        for a in labels:
            idx = idx * d + a
        return idx

    def basis_element(self, k: int, index: int) -> tuple[int, list[int]]:
        """Inverse of :meth:`index` in degree ``k``."""
        return _decode(index, self.algebra.dim, k)


def _boundary(algebra: Algebra, module: Bimodule, k: int) -> SparseMatrix:
    d = algebra.dim
    mul = algebra._mul
    left, right = module._left, module._right
    dk, dk1 = d ** k, d ** (k - 1)
    entries = []
    for col in range(module.dim * dk):
        m, a = _decode(col, d, k)
        rest = 0
        for x in a[1:]:
            rest = rest * d + x
        # m a1 | a2 ... ak
        for mm, v in right[m][a[0]].items():
            entries.append((mm * dk1 + rest, col, v))
        # middle contractions
        for i in range(k - 1):
            sign = -1 if i % 2 == 0 else 1
            prefix = 0
            for x in a[:i]:
                prefix = prefix * d + x
            suffix, slen = 0, k - i - 2
            for x in a[i + 2:]:
                suffix = suffix * d + x
            for c, v in mul[a[i]][a[i + 1]].items():
                row = m * dk1 + (prefix * d + c) * d ** slen + suffix
                entries.append((row, col, sign * v))
        # ak m | a1 ... a(k-1)
        sign = -1 if k % 2 else 1
        front = 0
        for x in a[:-1]:
            front = front * d + x
        for mm, v in left[a[-1]][m].items():
            entries.append((mm * dk1 + front, col, sign * v))
    return SparseMatrix(module.dim * dk1, module.dim * dk, entries, algebra.field)


def build_hochschild(algebra: Algebra, module: Bimodule | None = None, cap: int = 4) -> HochschildComplex:
    """Assemble degrees ``0..cap``; degree ``cap`` is truncated."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if module is None:
        module = regular_bimodule(algebra)
    if module.base is not algebra and module.base.dim != algebra.dim:
        raise ValueError("module is over a different algebra")
    d = algebra.dim
    dims = {k: module.dim * d ** k for k in range(cap + 1)}
    bounds = {k: _boundary(algebra, module, k) for k in range(1, cap + 1)}
    tags = {k: _Tags(module, algebra, k) for k in range(cap + 1)}
    c = ChainComplex(dims, bounds, tags=tags, truncated=True, field=algebra.field,
                     name=f"Hoch({module.name})")
    return HochschildComplex(algebra, module, cap, c)


def hh(algebra: Algebra, module: Bimodule | None = None, cap: int = 4) -> list[int]:
    """Hochschild homology dims in degrees ``0..cap-1``."""
    hc = build_hochschild(algebra, module, cap)
    return betti_numbers(hc.complex)[:cap]


def induced_map(f: SparseMatrix, source: HochschildComplex, target: HochschildComplex) -> ChainMap:
    """Chain map ``f (x) id`` induced by a bimodule map ``f``."""
    cap = min(source.cap, target.cap)
    d = source.algebra.dim
    comps = {k: f.kron(SparseMatrix.identity(d ** k, source.algebra.field)) for k in range(cap + 1)}
    return ChainMap(source.complex, target.complex, comps)


# ---------------------------------------------------------------------------
# periodic resolution oracle for Q[x]/(x^n)
#
# C (x) C is Q[x, y]/(x^n, y^n) with x acting on the left and y on the right;
# the basis vector x^s (x) x^t sits at index s*n + t.  The complex
#     ... -> C(x)C --v--> C(x)C --u--> C(x)C --eps--> C
# with u = x - y and v = sum_{i+j=n-1} x^i y^j is exact, because
# (x - y) v = x^n - y^n = 0 and, over the field, ker u is the principal ideal
# (v) while ker v = (x - y).  Applying C (x)_{C^e} - identifies x^s (x) x^t
# with x^{s+t} in C, which gives the coinvariant complex below.  Nothing here
# touches the Algebra class.


def _times(n: int, poly: dict, field) -> SparseMatrix:
    """Multiplication by ``poly`` ({(i, j): coeff}) on Q[x, y]/(x^n, y^n)."""
    entries = []
    for s in range(n):
        for t in range(n):
            for (i, j), c in poly.items():
                if s + i < n and t + j < n:
                    entries.append(((s + i) * n + t + j, s * n + t, c))
    return SparseMatrix(n * n, n * n, entries, field)


def periodic_resolution(n: int, length: int, field=None) -> tuple[dict, SparseMatrix]:
    """Maps ``d_1..d_length`` of the resolution and the augmentation."""
    if n < 2:
        raise ValueError("n must be at least 2")
    field = field if field is not None else default_field()
    u = _times(n, {(1, 0): 1, (0, 1): -1}, field)
    v = _times(n, {(i, n - 1 - i): 1 for i in range(n)}, field)
    maps = {k: (u if k % 2 else v) for k in range(1, length + 1)}
    eps = SparseMatrix(n, n * n, [(s + t, s * n + t, 1) for s in range(n) for t in range(n) if s + t < n],
                       field)
    return maps, eps


def resolution_exactness(n: int, length: int, field=None) -> Report:
    maps, eps = periodic_resolution(n, length, field)
    rep = Report(title=f"periodic resolution of Q[x]/(x^{n})")
    rep.check("augmentation surjective", rank(eps) == n, "resolution")
    rep.check("augmentation kills d1", (eps @ maps[1]).is_zero(), "resolution")
    rep.check("exact at P0", rank(eps) + rank(maps[1]) == n * n, "resolution")
    for k in range(1, length):
        ok = (maps[k] @ maps[k + 1]).is_zero() and rank(maps[k]) + rank(maps[k + 1]) == n * n
        rep.check(f"exact at P{k}", ok, "resolution")
    return rep


def small_resolution_hh(n: int, cap: int, field=None) -> list[int]:
    """``HH_*(Q[x]/(x^n))`` in degrees ``0..cap-1`` from the periodic resolution."""
    field = field if field is not None else default_field()
    rep = resolution_exactness(n, cap + 1, field)
    if not rep.passed:
        raise RuntimeError(f"resolution is not exact: {[c.name for c in rep.failures]}")
    maps, _ = periodic_resolution(n, cap, field)
    # coinvariants: x^s (x) x^t -> x^{s+t}
    coinv = SparseMatrix(n, n * n, [(s + t, s * n + t, 1) for s in range(n) for t in range(n) if s + t < n],
                         field)
    section = SparseMatrix(n * n, n, [(r, r, 1) for r in range(n)], field)  # x^r -> x^r (x) 1
    bounds = {k: coinv @ maps[k] @ section for k in range(1, cap + 1)}
    c = ChainComplex({k: n for k in range(cap + 1)}, bounds, truncated=True, field=field,
                     name=f"coinv resolution n={n}")
    if not validate(c).passed:
        raise RuntimeError("coinvariant complex has d^2 != 0")
    return betti_numbers(c)[:cap]


# ---------------------------------------------------------------------------
# characterizing properties


def generated_ideal(algebra: Algebra, generators: Sequence) -> list[dict]:
    """Spanning set of the two-sided ideal ``C g C``."""
    vecs = []
    for g in generators:
        for i in range(algebra.dim):
            left = algebra.mul(algebra.basis(i), g)
            for j in range(algebra.dim):
                v = algebra.mul(left, algebra.basis(j))
                if v:
                    vecs.append(v)
    return Subspace.span(algebra.dim, vecs, algebra.field).basis


def property_suite(algebra: Algebra, cap: int = 4, *, modules: Sequence[Bimodule] | None = None,
                   ideal_generator=None, exact_degrees: int | None = None, free: bool = True) -> Report:
    """Additivity, short exactness, HH_0 = coinvariants, and the free-module value."""
    rep = Report(title=f"Hochschild properties of {algebra.name}")
    reg = regular_bimodule(algebra)
    modules = list(modules) if modules is not None else [reg]

    # additivity
    m1, m2 = reg, reg
    h1, h2 = hh(algebra, m1, cap), hh(algebra, m2, cap)
    hs = hh(algebra, bimodule_direct_sum(m1, m2), cap)
    rep.check("additivity", hs == [a + b for a, b in zip(h1, h2)], "hh-direct-sum",
              summands=[h1, h2], sum=hs)

    # short exact sequence from an ideal
    if ideal_generator is None:
        ideal_generator = algebra.basis(1 if algebra.dim > 1 else 0)
    gens = generated_ideal(algebra, [ideal_generator])
    sub, incl = sub_bimodule(reg, gens)
    quot, proj = quotient_bimodule(reg, gens)
    top = exact_degrees if exact_degrees is not None else cap
    hsub, hmid, hquot = (build_hochschild(algebra, m, top) for m in (sub, reg, quot))
    ses = short_exact_check(induced_map(incl, hsub, hmid), induced_map(proj, hmid, hquot),
                            degrees=range(top + 1))
    rep.check("short exactness", ses.passed, "hh-short-exact",
              sub_dim=sub.dim, quotient_dim=quot.dim, degrees=top,
              failures=[c.name for c in ses.failures])

    # HH_0 = coinvariants
    rows = []
    for m in modules:
        h0 = hh(algebra, m, 1)[0]
        rows.append({"module": m.name, "hh0": h0, "coinvariants": coinvariants(m).dim})
    rep.check("HH0 = coinvariants", all(r["hh0"] == r["coinvariants"] for r in rows), "hh0-coinvariants",
              rows=rows)

    rep.tables["hh"] = {"regular": h1}
    if free:
        hf = hh(algebra, free_bimodule(algebra), cap)
        rep.check("free bimodule", hf == [algebra.dim] + [0] * (cap - 1), "hh-free-contractible", betti=hf)
        rep.tables["hh"]["free"] = hf
    return rep
