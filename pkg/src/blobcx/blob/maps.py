"""Chain maps between blob models: contraction, gluing, disjoint union, rotation."""

from __future__ import annotations

from ..chain import ChainComplex, ChainHomotopy, ChainMap, tensor
from ..linalg import SparseMatrix
from .manifold import Arc, Manifold, canonical, circle, interval, permutation_sign
from .model import BlobModel, build_blob_complex, evaluation_on_fields, unit_field

__all__ = [
    "contracting_homotopy",
    "section_map",
    "glue",
    "gluing_target",
    "disjoint_union_iso",
    "rotation_action",
    "matrix_order",
]


def _transport(src: BlobModel, tgt: BlobModel, k: int, arc_map, field_map=None) -> SparseMatrix:
    """Degree-``k`` matrix of ``(config, v) -> sign * (image config, field_map(v))``.

    ``arc_map`` sends one arc to its image; the image configuration is put in
    canonical order and the sorting permutation contributes its sign.
    """
    index = tgt.config_index(k)
    entries = []
    col = 0
    for c in src.configs[k]:
        image = [arc_map(a) for a in c]
        keys = [tgt.manifold.key(a) for a in image]
        sign = permutation_sign(keys)
        cc = canonical(tgt.manifold, image)
        i = index.get(cc)
        if i is None:
            raise ValueError(f"configuration {c} has no image in the target model")
        toff = tgt.offsets[k][i]
        space = tgt.spaces[cc]
        for vec in src.spaces[c].basis:
            w = field_map(vec) if field_map else vec
            coords = space.coordinates(w)
            if not space.contains(w):
                raise ValueError(f"image of a generator on {c} leaves V{cc}")
            for pos, x in coords.items():
                entries.append((toff + pos, col, sign * x))
            col += 1
    return SparseMatrix(tgt.complex.dim(k), src.complex.dim(k), entries, src.algebra.field)


# ---------------------------------------------------------------------------
# contraction of an interval


def section_map(model: BlobModel) -> SparseMatrix:
    """``s o p`` on degree 0: evaluate, then put the result at the first site."""
    m, A = model.manifold, model.algebra
    ev = evaluation_on_fields(m, A)
    cols = []
    for j in range(model.field_dim):
        val = ev.column(j)
        cols.append(unit_field(m, A, None, 0, val) if val else {})
    return SparseMatrix.from_columns(cols, model.field_dim, A.field)


def contracting_homotopy(model: BlobModel) -> tuple[ChainMap, ChainMap, ChainHomotopy]:
    """``(identity, s o p, h)`` with ``dh + hd = 1 - s o p`` below the cap.

    ``h`` adds the arc spanning the whole interval on top of any existing
    full-length tower.  The new arc sits right after that tower in canonical
    order, so forgetting it carries the sign ``(-1)**t`` with ``t`` the old
    tower height; ``h`` is premultiplied by the same sign.
    """
    m = model.manifold
    if m.kind != "interval":
        raise ValueError("the contraction is defined on an interval")
    if model.max_level is not None and model.max_level < model.cap:
        raise ValueError("the contraction needs towers up to the cap")
    n, cx = m.n, model.complex
    field = model.algebra.field
    sp = section_map(model)
    comps = {}
    for k in range(model.cap):
        index = model.config_index(k + 1)
        entries = []
        col = 0
        for c in model.configs[k]:
            t = sum(1 for a in c if a.start == 0 and a.end == n)
            new = canonical(m, list(c) + [Arc(0, n, t + 1)])
            sign = -1 if t % 2 else 1
            toff = model.offsets[k + 1][index[new]]
            space = model.spaces[new]
            for vec in model.spaces[c].basis:
                if k == 0:
                    # x - s(p(x)) lies in the evaluation kernel
                    w = dict(vec)
                    for i, x in sp.apply(vec).items():
                        w[i] = w.get(i, 0) - x
                    w = {i: x for i, x in w.items() if x}
                else:
                    w = vec
                if not space.contains(w):
                    raise AssertionError(f"homotopy leaves V{new}")
                for pos, x in space.coordinates(w).items():
                    entries.append((toff + pos, col, sign * x))
                col += 1
        comps[k] = SparseMatrix(cx.dim(k + 1), cx.dim(k), entries, field)
    ident = ChainMap(cx, cx, {k: SparseMatrix.identity(cx.dim(k), field) for k in range(model.cap + 1)})
    sp_map = ChainMap(cx, cx, {0: sp, **{k: SparseMatrix.zeros(cx.dim(k), cx.dim(k), field)
                                         for k in range(1, model.cap + 1)}})
    return ident, sp_map, ChainHomotopy(cx, comps)


# ---------------------------------------------------------------------------
# gluing


def gluing_target(m: Manifold) -> Manifold:
    """Circle from one interval; longer interval from two."""
    if m.kind == "interval":
        return circle(m.n)
    if m.kind == "union" and len(m.parts) == 2 and all(p.kind == "interval" for p in m.parts):
        return interval(m.sites)
    raise ValueError(f"cannot glue {m}")


def _gap_map(src: Manifold, tgt: Manifold):
    if src.kind == "interval" and tgt.kind == "circle" and tgt.n == src.n and not tgt.marked:
        n = src.n
        return lambda a: Arc((a.start - 1) % n, (a.end - 1) % n, a.level)
    if src.kind == "union" and tgt.kind == "interval" and tgt.n == src.sites:
        offs = src.offsets
        return lambda a: Arc(a.start + offs[a.part], a.end + offs[a.part], a.level)
    raise ValueError(f"no gluing from {src} to {tgt}")


def glue(src: BlobModel, tgt: BlobModel | None = None) -> ChainMap:
    """Gluing chain map into the glued manifold's model.

    Interval gap ``g`` becomes circle gap ``g - 1`` (both ends land in gap
    ``N - 1``); for two intervals the second is shifted past the first.
    Fields are untouched since sites keep their order.
    """
    if tgt is None:
        tgt = build_blob_complex(gluing_target(src.manifold), src.algebra, None, src.cap,
                                 max_level=src.max_level, budget=None)
    if src.algebra is not tgt.algebra:
        raise ValueError("models over different algebras")
    arc_map = _gap_map(src.manifold, tgt.manifold)
    top = min(src.cap, tgt.cap)
    comps = {k: _transport(src, tgt, k, arc_map) for k in range(top + 1)}
    return ChainMap(src.complex, tgt.complex, comps)


# ---------------------------------------------------------------------------
# disjoint union


def disjoint_union_iso(union: BlobModel, a: BlobModel, b: BlobModel,
                       product: ChainComplex | None = None) -> tuple[ChainMap, ChainMap]:
    """Mutually inverse maps ``B(A) (x) B(B) <-> B(A + B)``.

    Arcs of the first part come first in canonical order, so forgetting an
    arc of the second factor picks up ``(-1)**|a|`` exactly as the Koszul
    sign does; the map is a permutation of bases with no extra signs.
    """
    if product is None:
        product = tensor(a.complex, b.complex, cap=union.cap)
    top = min(union.cap, product.d_max)
    field = union.algebra.field
    nb = b.field_dim
    fwd = {}
    for n in range(top + 1):
        entries = []
        col = 0
        index = union.config_index(n)
        for i in range(a.cap + 1):
            j = n - i
            if j < 0 or j > b.cap:
                continue
            for ca in a.configs[i]:
                for va in a.spaces[ca].basis:
                    for cb in b.configs[j]:
                        cu = tuple(ca) + tuple(x._replace(part=1) for x in cb)
                        u = index[cu]
                        space = union.spaces[cu]
                        off = union.offsets[n][u]
                        for vb in b.spaces[cb].basis:
                            w = {p * nb + q: x * y for p, x in va.items() for q, y in vb.items()}
                            coords = space.coordinates(w)
                            if len(coords) != 1 or not space.contains(w):
                                raise AssertionError("product basis vector is not a union basis vector")
                            (pos, x), = coords.items()
                            entries.append((off + pos, col, x))
                            col += 1
        fwd[n] = SparseMatrix(union.complex.dim(n), product.dim(n), entries, field)
    back = {n: m.T for n, m in fwd.items()}
    return ChainMap(product, union.complex, fwd), ChainMap(union.complex, product, back)


# ---------------------------------------------------------------------------
# rotation


def rotation_action(model: BlobModel, steps: int = 1) -> ChainMap:
    """Chain automorphism induced by turning an unmarked circle ``steps`` sites clockwise."""
    m = model.manifold
    if m.kind != "circle" or m.marked:
        raise ValueError("rotation acts on an unmarked circle")
    n, geo = m.n, model.geometry
    s = steps % n

    def arc_map(a):
        return Arc((a.start + s) % n, (a.end + s) % n, a.level)

    # F-index permutation: label at site i moves to site i + s
    perm = []
    for idx in range(model.field_dim):
        out = 0
        for site in range(n):
            digit = (idx // geo.strides[site]) % geo.sizes[site]
            out += digit * geo.strides[(site + s) % n]
        perm.append(out)

    def field_map(v):
        return {perm[i]: x for i, x in v.items()}

    comps = {k: _transport(model, model, k, arc_map, field_map) for k in range(model.cap + 1)}
    return ChainMap(model.complex, model.complex, comps)


def matrix_order(mat: SparseMatrix, limit: int = 64) -> int | None:
    ident = SparseMatrix.identity(mat.shape[0], mat.field)
    p = mat
    for k in range(1, limit + 1):
        if p == ident:
            return k
        p = p @ mat
    return None
