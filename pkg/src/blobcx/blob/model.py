"""Assembly of the finite blob complex.

The field space ``F`` is the tensor product over sites (the bimodule at site
0 of a marked circle, the algebra elsewhere); a field is indexed in mixed
radix with site 0 most significant.  A generator in degree ``k`` is a
configuration of ``k`` arcs together with a vector of ``V_config``: the
tensor product of the evaluation kernels of its twigs with the full label
spaces of the remaining sites.  Basis vectors of ``V_config`` are products of
reduced-echelon kernel vectors, so the coordinates of any vector of
``V_config`` are its entries at the pivot positions.

The differential forgets the ``i``-th arc in canonical order with sign
``(-1)**i`` and keeps the field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from ..algebra import Algebra, Bimodule, evaluation_kernel, evaluation_matrix
from ..chain import ChainComplex
from ..linalg import SparseMatrix, quotient_projection, rank
from ..report import Report
from .manifold import Manifold, enumerate_configurations, remove_arc, twigs

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "IdealViolation",
    "Space",
    "BlobModel",
    "build_blob_complex",
    "estimate_size",
    "skein",
    "evaluation_on_fields",
    "unit_field",
    "skein_check",
]

DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, limit: int):
        super().__init__(f"estimated {estimate} generators exceeds the budget of {limit}")
        self.estimate = estimate
        self.limit = limit


class IdealViolation(AssertionError):
    """Forgetting a twig left a field outside the target subspace."""


@dataclass
class Space:
    """``V_config`` with its product basis."""

    config: tuple
    basis: list
    pivots: list
    index: dict = dc_field(repr=False)
    field: object = dc_field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, v: dict) -> dict:
        idx = self.index
        return {idx[p]: x for p, x in v.items() if p in idx}

    def contains(self, v: dict) -> bool:
        acc: dict = {}
        for pos, c in self.coordinates(v).items():
            for p, x in self.basis[pos].items():
                acc[p] = acc.get(p, 0) + c * x
        f = self.field if self.field is not None else (lambda x: x)
        return _nonzero(acc, f) == _nonzero(v, f)


def _nonzero(v: dict, f) -> dict:
    out = {}
    for p, x in v.items():
        x = f(x)
        if x:
            out[p] = x
    return out


class _Geometry:
    """Site sizes, strides and per-arc kernels for one (manifold, algebra, module)."""

    def __init__(self, manifold: Manifold, algebra: Algebra, module: Bimodule | None):
        if manifold.marked and module is None:
            raise ValueError("a marked circle needs a bimodule")
        self.m, self.A, self.M = manifold, algebra, module if manifold.marked else None
        n = manifold.sites
        self.sizes = [algebra.dim] * n
        if self.M is not None:
            self.sizes[0] = self.M.dim
        self.strides = [1] * n
        for s in range(n - 2, -1, -1):
            self.strides[s] = self.strides[s + 1] * self.sizes[s + 1]
        self.total = self.strides[0] * self.sizes[0] if n else 1
        self._blocks: dict = {}

    def _arc_block(self, sites: tuple) -> list[dict]:
        """Kernel vectors of the evaluation on ``sites`` as F-offset dicts."""
        if sites in self._blocks:
            return self._blocks[sites]
        k = len(sites)
        if self.M is not None and 0 in sites:
            pos = sites.index(0)
            K = evaluation_kernel(self.A, k - 1, self.M, (pos, k - 1 - pos))
        else:
            K = evaluation_kernel(self.A, k)
        sizes = [self.sizes[s] for s in sites]
        offs = [0]
        for s, size in zip(sites, sizes):
            offs = [o + i * self.strides[s] for o in offs for i in range(size)]
        block = [{offs[j]: x for j, x in v.items()} for v in K.basis]
        # pivot of each vector first so products keep pivots aligned
        block = [(offs[min(v)], b) for v, b in zip(K.basis, block)]
        self._blocks[sites] = block
        return block

    def _site_block(self, s: int) -> list:
        return [(i * self.strides[s], {i * self.strides[s]: 1}) for i in range(self.sizes[s])]

    def blocks(self, config: tuple) -> list:
        covered = set()
        out = []
        for t in twigs(self.m, config):
            sites = self.m.arc_sites(t)
            covered.update(sites)
            out.append(self._arc_block(sites))
        for s in range(self.m.sites):
            if s not in covered:
                out.append(self._site_block(s))
        return out

    def dimension(self, config: tuple) -> int:
        d = 1
        for b in self.blocks(config):
            d *= len(b)
        return d

    def space(self, config: tuple) -> Space:
        blocks = self.blocks(config)
        basis, pivots = [], []
        for combo in itertools.product(*blocks):
            piv = 0
            vec = {0: 1}
            for p, v in combo:
                piv += p
                vec = {i + j: a * b for i, a in vec.items() for j, b in v.items()}
            basis.append(vec)
            pivots.append(piv)
        if self.A.field.characteristic:
            basis = [_nonzero(v, self.A.field) for v in basis]
        return Space(config, basis, pivots, {p: i for i, p in enumerate(pivots)}, self.A.field)


def estimate_size(manifold: Manifold, algebra: Algebra, module: Bimodule | None = None,
                  cap: int = 3, max_level: int | None = None) -> int:
    """Total number of generators in degrees ``0..cap`` (exact, without assembling)."""
    geo = _Geometry(manifold, algebra, module)
    return sum(geo.dimension(c) for k in range(cap + 1)
               for c in enumerate_configurations(manifold, k, max_level))


@dataclass
class BlobModel:
    manifold: Manifold
    algebra: Algebra
    module: Bimodule | None
    cap: int
    max_level: int | None
    complex: ChainComplex
    configs: dict
    spaces: dict
    offsets: dict
    geometry: _Geometry = dc_field(repr=False)

    @property
    def field_dim(self) -> int:
        return self.geometry.total

    def config_index(self, k: int) -> dict:
        return {c: i for i, c in enumerate(self.configs[k])}

    def generator(self, k: int, index: int) -> tuple:
        """``(config, basis position)`` of a global index in degree ``k``."""
        offs = self.offsets[k]
        lo, hi = 0, len(offs) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if offs[mid] <= index:
                lo = mid
            else:
                hi = mid - 1
        return self.configs[k][lo], index - offs[lo]

    def locate(self, config: tuple, vector: dict) -> dict:
        """Global degree-``k`` coordinates of ``(config, vector)``."""
        k = len(config)
        i = self.config_index(k)[config]
        off = self.offsets[k][i]
        return {off + p: x for p, x in self.spaces[config].coordinates(vector).items()}

    @property
    def dims(self) -> list[int]:
        return [self.complex.dim(k) for k in range(self.cap + 1)]


def _tag(m: Manifold, config: tuple, pos: int) -> str:
    arcs = " ".join(str(a) for a in config) or "-"
    return f"{{{arcs}}}#{pos}"


class _Tags:
    def __init__(self, model_ref: dict, k: int):
        self.ref, self.k = model_ref, k

    def __getitem__(self, idx):
        model = self.ref["model"]
        c, pos = model.generator(self.k, idx)
        return _tag(model.manifold, c, pos)


def build_blob_complex(manifold: Manifold, algebra: Algebra, module: Bimodule | None = None,
                       cap: int = 3, *, max_level: int | None = None, check_ideal: bool = True,
                       budget: int | None = DEFAULT_BUDGET) -> BlobModel:
    """Assemble degrees ``0..cap``; ``max_level=1`` forbids towers."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    geo = _Geometry(manifold, algebra, module)
    configs = {k: enumerate_configurations(manifold, k, max_level) for k in range(cap + 1)}
    if budget is not None:
        est = sum(geo.dimension(c) for k in configs for c in configs[k])
        if est > budget:
            raise BudgetExceeded(est, budget)
    spaces, offsets, dims = {}, {}, {}
    for k in range(cap + 1):
        offs, off = [], 0
        for c in configs[k]:
            sp = geo.space(c)
            spaces[c] = sp
            offs.append(off)
            off += sp.dim
        offsets[k], dims[k] = offs, off
    bounds = {}
    for k in range(1, cap + 1):
        index = {c: i for i, c in enumerate(configs[k - 1])}
        entries = []
        col = 0
        for c in configs[k]:
            sp = spaces[c]
            tw = set(twigs(manifold, c))
            faces = []
            for i in range(k):
                face = remove_arc(c, i)
                tgt = spaces[face]
                faces.append((-1 if i % 2 else 1, offsets[k - 1][index[face]], tgt, c[i] in tw))
            for vec in sp.basis:
                for sign, toff, tgt, was_twig in faces:
                    if check_ideal and was_twig and not tgt.contains(vec):
                        raise IdealViolation(f"forgetting a twig of {c} leaves {tgt.config}")
                    for pos, x in tgt.coordinates(vec).items():
                        entries.append((toff + pos, col, sign * x))
                col += 1
        bounds[k] = SparseMatrix(dims[k - 1], dims[k], entries, algebra.field)
    ref: dict = {}
    tags = {k: _Tags(ref, k) for k in range(cap + 1)}
    name = f"B({manifold}; {module.name if manifold.marked else algebra.name})"
    cx = ChainComplex(dims, bounds, tags=tags, truncated=True, field=algebra.field, name=name)
    model = BlobModel(manifold, algebra, module if manifold.marked else None, cap, max_level, cx,
                      configs, spaces, offsets, geo)
    ref["model"] = model
    return model


# ---------------------------------------------------------------------------
# degree zero


def evaluation_on_fields(manifold: Manifold, algebra: Algebra, module: Bimodule | None = None) -> SparseMatrix:
    """Read every field left to right (clockwise from site 0) and multiply.

    Lands in the algebra, or in the bimodule for a marked circle.  Disjoint
    unions are not supported.
    """
    if manifold.kind == "union":
        raise ValueError("evaluation is defined on a connected manifold")
    n = manifold.n
    if manifold.marked:
        return evaluation_matrix(algebra, n - 1, module, (0, n - 1))
    return evaluation_matrix(algebra, n)


def skein(manifold: Manifold, algebra: Algebra, module: Bimodule | None = None, *,
          model: BlobModel | None = None) -> tuple[int, SparseMatrix]:
    """``H_0 = F / d(B_1)`` with its projection matrix from ``F``."""
    if model is None:
        model = build_blob_complex(manifold, algebra, module, cap=1, budget=None)
    d1 = model.complex.d(1)
    P, basis = quotient_projection(model.field_dim, [c for c in d1.columns() if c], algebra.field)
    return len(basis), P


def unit_field(manifold: Manifold, algebra: Algebra, module: Bimodule | None = None,
               slot: int = 0, value: dict | None = None) -> dict:
    """Field with ``value`` at site ``slot`` and the unit at every other site."""
    geo = _Geometry(manifold, algebra, module)
    vec = {0: 1}
    for s in range(manifold.sites):
        if s == slot and value is not None:
            local = value
        else:
            local = algebra.unit
        vec = {i + j * geo.strides[s]: a * b for i, a in vec.items() for j, b in local.items()}
    return {i: x for i, x in vec.items() if x}


def skein_check(manifold: Manifold, algebra: Algebra, module: Bimodule | None = None) -> Report:
    """``H_0`` against the algebra (interval) or coinvariants (circle) via evaluation.

    The evaluation map kills ``d(B_1)``, is onto, and the dimensions agree,
    so it induces an isomorphism on ``H_0``.
    """
    from ..algebra import coinvariants, regular_bimodule

    model = build_blob_complex(manifold, algebra, module, cap=1, budget=None)
    dim_h0, _ = skein(manifold, algebra, module, model=model)
    if manifold.kind == "interval":
        target_dim = algebra.dim
        ev = evaluation_on_fields(manifold, algebra)
        tag = "skein-interval"
    else:
        mod = module if manifold.marked else regular_bimodule(algebra)
        co = coinvariants(mod)
        target_dim = co.dim
        ev = co.projection @ (evaluation_on_fields(manifold, algebra, module) if manifold.marked
                              else evaluation_on_fields(manifold, algebra))
        tag = "skein-coinvariants"
    rep = Report(title=f"skein module of {manifold}")
    ok = (dim_h0 == target_dim and (ev @ model.complex.d(1)).is_zero() and rank(ev) == target_dim)
    rep.check(f"H0({manifold}) iso via evaluation", ok, tag, h0=dim_h0, target=target_dim)
    return rep
