"""Low-degree chain map from the Hochschild complex into the marked-circle model.

Sites: the bimodule sits at site 0 (the base point), ``a`` at site 1 and
``b`` at site 2.  Writing ``[x0, x1, ...]`` for the field with label ``x_i``
at site ``i`` (unit where omitted):

* ``phi0(m) = [m]``.
* ``phi1(m|a)`` is a sum of two 1-blob diagrams: the arc covering sites
  ``0, 1`` with field ``[ma] - [m, a]``, and the full arc ``F_0`` (which
  reads ``1, 2, ..., N-1, 0``) with field ``[m, a] - [am]``.  Their
  boundaries add up to ``phi0(ma - am)``.
* ``phi2`` is any exact solution of ``d phi2 = phi1 d`` in degree 2, found
  by one simultaneous linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, Bimodule, coinvariants, regular_bimodule
from .blob.manifold import Arc, circle
from .blob.model import BlobModel, BudgetExceeded, build_blob_complex, evaluation_on_fields, skein
from .chain import betti_numbers
from .hochschild import HochschildComplex, build_hochschild, hh
from .linalg import Inconsistent, SparseMatrix, rank, solve_many
from .report import Report

__all__ = ["ComparisonMap", "Phi2Inconsistent", "build_phi", "verify_phi", "h0_comparison",
           "stabilization_study"]


class Phi2Inconsistent(RuntimeError):
    """``phi1 d`` left the image of the blob differential."""


@dataclass
class ComparisonMap:
    source: HochschildComplex
    target: BlobModel
    phi: dict  # degree -> SparseMatrix


def _field(model: BlobModel, labels: dict) -> dict:
    """Tensor of ``labels[site]`` (unit elsewhere) as an F-vector."""
    geo, A = model.geometry, model.algebra
    vec = {0: 1}
    for s in range(model.manifold.sites):
        local = labels.get(s, A.unit)
        vec = {i + j * geo.strides[s]: x * y for i, x in vec.items() for j, y in local.items() if x * y}
    return vec


def _add(acc: dict, vec: dict, scale=1) -> None:
    for i, x in vec.items():
        acc[i] = acc.get(i, 0) + scale * x
        if not acc[i]:
            del acc[i]


def build_phi(algebra: Algebra, module: Bimodule | None = None, n: int = 3, blob_cap: int = 2) -> ComparisonMap:
    if n < 3:
        raise ValueError("the comparison map needs at least three sites")
    if blob_cap < 2:
        raise ValueError("the comparison map needs blob degree 2")
    if module is None:
        module = regular_bimodule(algebra)
    hoch = build_hochschild(algebra, module, 2)
    model = build_blob_complex(circle(n, marked=True), algebra, module, blob_cap, budget=None)
    f = algebra.field
    d, dm = algebra.dim, module.dim

    # degree 0
    phi0 = SparseMatrix.from_columns([_field(model, {0: {m: 1}}) for m in range(dm)], model.field_dim, f)

    # degree 1
    near = (Arc(n - 1, 1),)  # covers sites 0, 1
    full = (Arc(0, 0),)  # full arc read from site 1
    cols = []
    for m in range(dm):
        for a in range(d):
            e_m, e_a = {m: 1}, {a: 1}
            ma = module.act_right(e_m, e_a)
            am = module.act_left(e_a, e_m)
            mid = _field(model, {0: e_m, 1: e_a})
            v_near = _field(model, {0: ma})
            _add(v_near, mid, -1)
            v_full = dict(mid)
            _add(v_full, _field(model, {0: am}), -1)
            col = {}
            for config, v in ((near, v_near), (full, v_full)):
                if not model.spaces[config].contains(v):
                    raise AssertionError(f"phi1 label is not a local relation on {config}")
                _add(col, model.locate(config, v))
            cols.append(col)
    phi1 = SparseMatrix.from_columns(cols, model.complex.dim(1), f)

    # degree 2: solve d2 x = phi1 d2^Hoch
    rhs = (phi1 @ hoch.complex.d(2)).columns()
    sols = solve_many(model.complex.d(2), rhs)
    bad = [i for i, x in enumerate(sols) if x is Inconsistent]
    if bad:
        raise Phi2Inconsistent(f"no solution for Hochschild generators {[hoch.complex.tag(2, i) for i in bad[:5]]}")
    phi2 = SparseMatrix.from_columns(sols, model.complex.dim(2), f)
    return ComparisonMap(hoch, model, {0: phi0, 1: phi1, 2: phi2})


def verify_phi(cm: ComparisonMap) -> Report:
    """Chain-map identities on full bases plus injectivity of ``phi0``."""
    rep = Report(title="comparison map")
    H, B = cm.source.complex, cm.target.complex
    for k in (1, 2):
        lhs = B.d(k) @ cm.phi[k]
        rhs = cm.phi[k - 1] @ H.d(k)
        diff = lhs - rhs
        bad = [H.tag(k, j) for j in range(diff.shape[1]) if diff.column(j)]
        rep.check(f"d phi{k} = phi{k - 1} d", not bad, "comparison-chain-map", failures=bad[:10],
                  generators=H.dim(k))
    rep.check("phi0 injective", rank(cm.phi[0]) == H.dim(0), "comparison-phi0")
    return rep


def h0_comparison(cm: ComparisonMap) -> Report:
    """``pi o ev`` and the map induced by ``phi0`` are inverse on degree 0 homology."""
    model = cm.target
    A, M = model.algebra, model.module
    rep = Report(title="H0 comparison")
    co = coinvariants(M)
    pi = co.projection
    ev = evaluation_on_fields(model.manifold, A, M)
    pe = pi @ ev
    dim_h0, P = skein(model.manifold, A, M, model=model)
    rep.check("pi ev phi0 = pi", pe @ cm.phi[0] == pi, "h0-inverse")
    rep.check("pi ev kills boundaries", (pe @ model.complex.d(1)).is_zero(), "h0-well-defined")
    rep.check("dim H0 = dim coinv", dim_h0 == co.dim, "h0-coinvariants", h0=dim_h0, coinvariants=co.dim)
    # section of pi: coinvariant basis vectors are unit vectors of M
    free = [j for j in range(M.dim) if j not in set(co.relations.pivots)]
    sigma = SparseMatrix.from_columns([{j: 1} for j in free], M.dim, A.field)
    ok_sigma = (pi @ sigma) == SparseMatrix.identity(co.dim, A.field)
    back = P @ cm.phi[0] @ sigma @ pe
    rep.check("phi0 sigma pi ev = 1 on H0", ok_sigma and back == P, "h0-inverse")
    rep.tables["h0"] = {"dim": dim_h0, "coinvariants": co.dim}
    return rep


def stabilization_study(algebra: Algebra, module: Bimodule | None = None, n_range=range(2, 7),
                        degree_cap: int = 2, *, budget: int = 200_000, max_level: int | None = 1) -> Report:
    """Betti numbers of the marked-circle model against Hochschild homology as ``N`` grows.

    Degree 0 is computed for every ``N`` from the skein quotient and is a
    hard check; higher degrees are recorded as findings.  The model is built
    to degree ``degree_cap + 1`` so that every reported degree is exact;
    ``max_level=1`` uses the tower-free variant to keep sizes down.
    """
    if module is None:
        module = regular_bimodule(algebra)
    rep = Report(title=f"stabilization of {module.name}")
    target = hh(algebra, module, degree_cap + 1)
    rows = []
    for n in n_range:
        m = circle(n, marked=True)
        h0, _ = skein(m, algebra, module)
        row = {"N": n, "hh": target, "betti": None, "h0": h0, "status": "ok"}
        try:
            model = build_blob_complex(m, algebra, module, degree_cap + 1, max_level=max_level,
                                       budget=budget, check_ideal=False)
            row["betti"] = betti_numbers(model.complex, check=False)[:degree_cap + 1]
            row["dims"] = model.dims
        except BudgetExceeded as exc:
            row["status"] = f"skipped: {exc}"
        rows.append(row)
    rep.check("degree 0 agrees for every N", all(r["h0"] == target[0] for r in rows if r["N"] >= 2),
              "stabilization-degree-0", hh0=target[0], h0=[r["h0"] for r in rows])
    first, stable = {}, {}
    computed = [r for r in rows if r["betti"] is not None]
    for k in range(degree_cap + 1):
        agree = [r["betti"][k] == target[k] for r in computed]
        hits = [r["N"] for r, ok in zip(computed, agree) if ok]
        first[k] = min(hits) if hits else "no agreement in range"
        # smallest N after which every computed row agrees
        tail = None
        for r, ok in zip(reversed(computed), reversed(agree)):
            if not ok:
                break
            tail = r["N"]
        stable[k] = tail if tail is not None else "no agreement in range"
    rep.info("minimal agreeing N", "stabilization", first=first, stable_from=stable)
    rep.tables["stabilization"] = rows
    rep.tables["minimal_agreeing_N"] = {"first": first, "stable_from": stable}
    return rep
