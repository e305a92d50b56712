"""Finite chain complexes, chain maps and homotopies over an exact field.

Boundary ``d[k]`` maps degree ``k`` to degree ``k - 1`` and has shape
``(dim[k-1], dim[k])``.  A complex built only up to some degree ``D`` can be
marked ``truncated``: its degree-``D`` homology is then only an upper bound,
because the missing ``d[D+1]`` could kill further cycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .linalg import SparseMatrix, _Echelon, default_field, kernel_basis, rank
from .report import Report

__all__ = [
    "ChainComplex",
    "ChainMap",
    "ChainHomotopy",
    "HomologyGroup",
    "validate",
    "homology",
    "betti_numbers",
    "tensor",
    "direct_sum",
    "verify_chain_map",
    "verify_homotopy",
    "short_exact_check",
    "compose",
    "identity_map",
]


class ChainComplex:
    def __init__(
        self,
        dims: Mapping[int, int],
        boundaries: Mapping[int, SparseMatrix] | None = None,
        *,
        tags: Mapping[int, Sequence[str]] | None = None,
        truncated: bool = False,
        field=None,
        name: str = "",
    ):
        self.field = field if field is not None else default_field()
        self.dims = {int(k): int(v) for k, v in dims.items()}
        if not self.dims:
            self.dims = {0: 0}
        self.d_min = min(self.dims)
        self.d_max = max(self.dims)
        for k in range(self.d_min, self.d_max + 1):
            self.dims.setdefault(k, 0)
        self._d: dict[int, SparseMatrix] = {}
        for k, m in (boundaries or {}).items():
            want = (self.dim(k - 1), self.dim(k))
            if m.shape != want:
                raise ValueError(f"boundary d[{k}] has shape {m.shape}, expected {want}")
            self._d[k] = m
        self.tags = dict(tags or {})
        self.truncated = truncated
        self.name = name
        self._ranks: dict[int, int] = {}

    def __repr__(self):
        dims = [self.dim(k) for k in self.degrees]
        return f"ChainComplex({self.name!r}, degrees {self.d_min}..{self.d_max}, dims {dims})"

    @property
    def degrees(self) -> range:
        return range(self.d_min, self.d_max + 1)

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    def d(self, k: int) -> SparseMatrix:
        m = self._d.get(k)
        if m is None:
            m = SparseMatrix.zeros(self.dim(k - 1), self.dim(k), self.field)
        return m

    def rank_d(self, k: int) -> int:
        if k not in self._ranks:
            m = self._d.get(k)
            self._ranks[k] = rank(m) if m is not None and not m.is_zero() else 0
        return self._ranks[k]

    def tag(self, k: int, i: int) -> str:
        t = self.tags.get(k)
        return t[i] if t is not None else f"g{k}.{i}"


@dataclass
class HomologyGroup:
    degree: int
    betti: int
    representatives: list | None = None
    upper_bound_only: bool = False


def validate(c: ChainComplex) -> Report:
    rep = Report(title=f"validate {c.name}")
    bad = []
    for k in range(c.d_min + 2, c.d_max + 1):
        comp = c.d(k - 1) @ c.d(k)
        if not comp.is_zero():
            i, j, _ = next(comp.entries())
            bad.append({"degree": k, "row": c.tag(k - 2, i), "column": c.tag(k, j)})
    rep.check("d^2=0", not bad, "boundary-squares-to-zero", failures=bad)
    return rep


def homology(c: ChainComplex, representatives: bool = False, check: bool = True) -> list[HomologyGroup]:
    """Betti numbers (and optionally cycle representatives) in every degree."""
    if check and not validate(c).passed:
        raise ValueError(f"{c.name or 'complex'} is not a chain complex")
    out = []
    for k in c.degrees:
        ker = c.dim(k) - c.rank_d(k)
        betti = ker - c.rank_d(k + 1)
        reps = _representatives(c, k) if representatives else None
        out.append(HomologyGroup(k, betti, reps, c.truncated and k == c.d_max))
    return out


def betti_numbers(c: ChainComplex, check: bool = True) -> list[int]:
    return [h.betti for h in homology(c, check=check)]


def _representatives(c: ChainComplex, k: int) -> list[dict]:
    ech = _Echelon(c.field)
    for col in c.d(k + 1).columns():
        if col:
            ech.add(col)
    reps = []
    for z in kernel_basis(c.d(k)):
        if ech.add(z) is not None:
            reps.append(z)
    return reps


# ---------------------------------------------------------------------------
# maps


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: dict = field(default_factory=dict)
    degree_shift: int = 0

    def __post_init__(self):
        for k, m in self.components.items():
            want = (self.target.dim(k + self.degree_shift), self.source.dim(k))
            if m.shape != want:
                raise ValueError(f"component {k} has shape {m.shape}, expected {want}")

    def __getitem__(self, k: int) -> SparseMatrix:
        m = self.components.get(k)
        if m is None:
            m = SparseMatrix.zeros(self.target.dim(k + self.degree_shift), self.source.dim(k),
                                   self.source.field)
        return m


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {k: SparseMatrix.identity(c.dim(k), c.field) for k in c.degrees})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g o f``."""
    degs = set(f.components) & {k - f.degree_shift for k in g.components}
    return ChainMap(f.source, g.target,
                    {k: g[k + f.degree_shift] @ f[k] for k in sorted(degs)},
                    f.degree_shift + g.degree_shift)


@dataclass
class ChainHomotopy:
    """Degree +1 maps ``h[k]: C_k -> D_{k+1}``."""

    source: ChainComplex
    components: dict = field(default_factory=dict)
    target: ChainComplex | None = None

    def __post_init__(self):
        if self.target is None:
            self.target = self.source

    def __getitem__(self, k: int) -> SparseMatrix:
        m = self.components.get(k)
        if m is None:
            m = SparseMatrix.zeros(self.target.dim(k + 1), self.source.dim(k), self.source.field)
        return m


def verify_chain_map(f: ChainMap) -> Report:
    """``d f = f d`` in every degree where both sides are available."""
    rep = Report(title="chain map")
    src, tgt = f.source, f.target
    bad = []
    checked = []
    for k in sorted(f.components):
        if k - 1 not in f.components:
            continue
        lhs = tgt.d(k + f.degree_shift) @ f[k]
        rhs = f[k - 1] @ src.d(k)
        if f.degree_shift % 2:
            rhs = -rhs
        checked.append(k)
        if lhs != rhs:
            i, j, _ = next((lhs - rhs).entries())
            bad.append({"degree": k, "row": i, "column": src.tag(k, j)})
    rep.check("commutes-with-d", not bad, "chain-map", degrees=checked, failures=bad)
    return rep


def verify_homotopy(h: ChainHomotopy, f: ChainMap, g: ChainMap) -> Report:
    """``d h + h d = f - g`` in each degree where ``h[k]`` is given."""
    rep = Report(title="chain homotopy")
    src, tgt = h.source, h.target
    bad = []
    checked = []
    for k in sorted(h.components):
        lhs = tgt.d(k + 1) @ h[k]
        if k - 1 in h.components:
            lhs = lhs + h[k - 1] @ src.d(k)
        rhs = f[k] - g[k]
        checked.append(k)
        if lhs != rhs:
            i, j, _ = next((lhs - rhs).entries())
            bad.append({"degree": k, "row": i, "column": src.tag(k, j)})
    rep.check("dh+hd=f-g", not bad, "chain-homotopy", degrees=checked, failures=bad)
    return rep


def short_exact_check(incl: ChainMap, proj: ChainMap, degrees: Sequence[int] | None = None) -> Report:
    """Per-degree exactness of ``0 -> A -> B -> C -> 0`` by exact ranks."""
    if incl.target is not proj.source:
        raise ValueError("incl.target must be proj.source")
    rep = Report(title="short exact sequence")
    rep.extend(verify_chain_map(incl), "incl:")
    rep.extend(verify_chain_map(proj), "proj:")
    A, B, C = incl.source, incl.target, proj.target
    if degrees is None:
        degrees = sorted(set(A.degrees) | set(B.degrees) | set(C.degrees))
    rows = []
    for k in degrees:
        i, p = incl[k], proj[k]
        ri, rp = rank(i), rank(p)
        row = {
            "degree": k,
            "injective": ri == A.dim(k),
            "surjective": rp == C.dim(k),
            "composite-zero": (p @ i).is_zero(),
            "middle-exact": ri == B.dim(k) - rp,
        }
        rows.append(row)
    ok = all(all(v for key, v in r.items() if key != "degree") for r in rows)
    rep.check("exact", ok, "short-exact", degrees=rows)
    return rep


# ---------------------------------------------------------------------------
# constructions


def tensor(a: ChainComplex, b: ChainComplex, cap: int | None = None) -> ChainComplex:
    """Tensor product with ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``.

    The degree-``n`` basis lists blocks ``a_i (x) b_{n-i}`` by increasing
    ``i``, each block in lexicographic order.
    """
    lo = a.d_min + b.d_min
    hi = a.d_max + b.d_max if cap is None else min(cap, a.d_max + b.d_max)
    offsets: dict[tuple[int, int], int] = {}
    dims = {}
    for n in range(lo, hi + 1):
        off = 0
        for i in a.degrees:
            j = n - i
            if j in b.dims:
                offsets[(i, j)] = off
                off += a.dim(i) * b.dim(j)
        dims[n] = off
    bounds = {}
    for n in range(lo + 1, hi + 1):
        entries = []
        for i in a.degrees:
            j = n - i
            if (i, j) not in offsets:
                continue
            src_off, nb = offsets[(i, j)], b.dim(j)
            da, db = a.d(i), b.d(j)
            sign = -1 if i % 2 else 1
            if (i - 1, j) in offsets:
                t_off, tb = offsets[(i - 1, j)], b.dim(j)
                for r, col, v in da.entries():
                    for q in range(nb):
                        entries.append((t_off + r * tb + q, src_off + col * nb + q, v))
            if (i, j - 1) in offsets:
                t_off, tb = offsets[(i, j - 1)], b.dim(j - 1)
                for r, col, v in db.entries():
                    for p in range(a.dim(i)):
                        entries.append((t_off + p * tb + r, src_off + p * nb + col, sign * v))
        bounds[n] = SparseMatrix(dims[n - 1], dims[n], entries, a.field)
    return ChainComplex(dims, bounds, field=a.field, name=f"({a.name})x({b.name})",
                        truncated=a.truncated or b.truncated or (cap is not None and cap < a.d_max + b.d_max))


def direct_sum(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    degs = set(a.degrees) | set(b.degrees)
    dims = {k: a.dim(k) + b.dim(k) for k in degs}
    bounds = {k: SparseMatrix.block_diag([a.d(k), b.d(k)], a.field) for k in degs if k - 1 in degs}
    return ChainComplex(dims, bounds, field=a.field, name=f"({a.name})+({b.name})",
                        truncated=a.truncated or b.truncated)
