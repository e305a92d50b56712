"""The acceptance suite: one record per acceptance item.

Every item function takes the list of algebras to exercise (so a mutation
test can inject a tampered one) and a profile name, and returns a
:class:`~blobcx.report.Report` of sub-checks.  :func:`run_all` folds each
item into exactly one top-level record.
"""

from __future__ import annotations

import os
import time
from contextlib import contextmanager
from typing import Callable, Sequence

from .algebra import BUILTIN_ALGEBRAS, Algebra, builtin, free_bimodule, regular_bimodule, symmetric3_group_algebra
from .blob.manifold import Arc, canonical, circle, disjoint_union, enumerate_configurations, interval
from .blob.maps import contracting_homotopy, disjoint_union_iso, glue
from .blob.model import BudgetExceeded, build_blob_complex, skein_check
from .blob.poset import mobius_bounded, order_complex_homology, splitting_poset
from .blob.shape import brute_force_faces, cube_f_vector, f_vector, shape, simplex_f_vector
from .chain import betti_numbers, validate, verify_chain_map, verify_homotopy
from .comparison import Phi2Inconsistent, build_phi, h0_comparison, stabilization_study, verify_phi
from .hochschild import build_hochschild, hh, property_suite, small_resolution_hh
from .linalg import SparseMatrix, rank
from .report import FAIL, INFO, PASS, Check, Report

__all__ = ["PROFILES", "ITEMS", "default_algebras", "run_item", "run_all"]

PROFILES = ("quick", "full")


@contextmanager
def _rationals():
    """Acceptance runs always use exact rationals, whatever BLOB_FIELD says."""
    saved = os.environ.pop("BLOB_FIELD", None)
    try:
        yield
    finally:
        if saved is not None:
            os.environ["BLOB_FIELD"] = saved


def default_algebras(profile: str = "quick") -> list[Algebra]:
    with _rationals():
        algs = [builtin(*spec) for spec in BUILTIN_ALGEBRAS]
        if profile == "full":
            algs.append(symmetric3_group_algebra())
    return algs


class _Cache:
    """Models shared between items within one run."""

    def __init__(self):
        self.models: dict = {}

    def model(self, manifold, algebra, module=None, cap=3, max_level=None):
        key = (manifold, id(algebra), id(module) if module is not None else None, cap, max_level)
        if key not in self.models:
            self.models[key] = build_blob_complex(manifold, algebra, module, cap, max_level=max_level,
                                                  budget=None)
        return self.models[key]


def _instances(algebras, profile):
    """(manifold, algebra, module) triples covered by items 1 and 11."""
    top = 5 if profile == "full" else 4
    out = []
    for A in algebras:
        reg = regular_bimodule(A)
        for n in range(1, top + 1):
            if profile == "full" and n == 5 and A.dim > 3:
                continue
            out.append((interval(n), A, None))
            out.append((circle(n), A, None))
            out.append((circle(n, marked=True), A, reg))
    return out


# ---------------------------------------------------------------------------
# items


def item_complex_validity(algebras, profile, cache) -> Report:
    rep = Report()
    for m, A, M in _instances(algebras, profile):
        cx = cache.model(m, A, M).complex
        rep.check(f"{A.name} {m}", validate(cx).passed, "blob-d2", dims=[cx.dim(k) for k in cx.degrees])
    for A in algebras:
        mods = (regular_bimodule(A), free_bimodule(A)) if A.dim <= 4 else (regular_bimodule(A),)
        for M in mods:
            cx = build_hochschild(A, M, 5).complex
            rep.check(f"Hoch({A.name}, {M.name}) cap 5", validate(cx).passed, "hochschild-d2")
    return rep


def item_skein(algebras, profile, cache) -> Report:
    rep = Report()
    for A in algebras:
        for n in (2, 3, 4):
            rep.extend(skein_check(interval(n), A), f"{A.name}: ")
            for M in (regular_bimodule(A), free_bimodule(A)):
                r = skein_check(circle(n, marked=True), A, M)
                rep.extend(r, f"{A.name} {M.name}: ")
    return rep


def item_contractible(algebras, profile, cache) -> Report:
    rep = Report()
    cap = 4 if profile == "full" else 3
    for A in algebras:
        for n in (1, 2, 3, 4):
            model = cache.model(interval(n), A, None, cap)
            b = betti_numbers(model.complex)[:cap]
            rep.check(f"{A.name} interval({n}) betti", b == [A.dim] + [0] * (cap - 1), "ball-contractible",
                      betti=b)
            f, g, h = contracting_homotopy(model)
            rep.check(f"{A.name} interval({n}) dh+hd=1-sp", verify_homotopy(h, f, g).passed,
                      "ball-homotopy")
    return rep


def _is_identity(m: SparseMatrix) -> bool:
    return m == SparseMatrix.identity(m.shape[0], m.field)


def item_disjoint_union(algebras, profile, cache) -> Report:
    rep = Report()
    cap = 2
    for A in algebras:
        for na in (1, 2):
            for nb in (1, 2):
                a = cache.model(interval(na), A, None, cap)
                b = cache.model(interval(nb), A, None, cap)
                u = cache.model(disjoint_union(interval(na), interval(nb)), A, None, cap)
                fwd, back = disjoint_union_iso(u, a, b)
                ok = (verify_chain_map(fwd).passed and verify_chain_map(back).passed
                      and all(fwd.source.dim(k) == fwd.target.dim(k) for k in range(cap + 1))
                      and all(_is_identity(back[k] @ fwd[k]) and _is_identity(fwd[k] @ back[k])
                              for k in range(cap + 1)))
                rep.check(f"{A.name} I({na}) + I({nb})", ok, "disjoint-union-iso",
                          dims=[u.complex.dim(k) for k in range(cap + 1)])
    return rep


def item_gluing(algebras, profile, cache) -> Report:
    rep = Report()
    algs = [builtin("truncated_polynomial", 2)]
    if profile == "full":
        algs = algebras
    for A in algs:
        src = cache.model(interval(3), A)
        tgt = cache.model(circle(3), A)
        gl = glue(src, tgt)
        ranks = [(rank(gl[k]), src.complex.dim(k)) for k in range(3)]
        rep.check(f"{A.name} interval(3) -> circle(3)",
                  verify_chain_map(gl).passed and all(r == d for r, d in ranks), "gluing",
                  ranks=ranks)
    return rep


def item_hochschild_properties(algebras, profile, cache) -> Report:
    rep = Report()
    for A in algebras:
        small = A.dim <= 4
        mods = [regular_bimodule(A), free_bimodule(A)] if small else [regular_bimodule(A)]
        r = property_suite(A, 5, modules=mods, exact_degrees=4, free=small)
        rep.extend(r, f"{A.name}: ")
    return rep


def item_oracle(algebras, profile, cache) -> Report:
    rep = Report()
    for n in (2, 3) if profile == "quick" else (2, 3, 4):
        A = builtin("truncated_polynomial", n)
        bar, res = hh(A, None, 5), small_resolution_hh(n, 5)
        rep.check(f"Q[x]/(x^{n})", bar == res, "hh-oracle", bar=bar, resolution=res)
    return rep


def item_comparison(algebras, profile, cache) -> Report:
    rep = Report()
    for A in algebras:
        if A.dim > 4:
            continue
        try:
            cm = build_phi(A, None, 3, 2)
        except Phi2Inconsistent as exc:
            rep.check(f"{A.name} phi2 solvable", False, "comparison-chain-map", error=str(exc))
            continue
        rep.extend(verify_phi(cm), f"{A.name}: ")
        rep.extend(h0_comparison(cm), f"{A.name}: ")
    return rep


def item_shape(algebras, profile, cache) -> Report:
    rep = Report()
    m = interval(8)
    for k in range(5):
        nested = canonical(m, [Arc(i, 8 - i) for i in range(k)])
        disjoint = canonical(m, [Arc(i, i + 1) for i in range(k)])
        for label, c, want in (("nested", nested, simplex_f_vector(k)), ("disjoint", disjoint, cube_f_vector(k))):
            s = shape(m, c)
            fv = f_vector(s)
            rep.check(f"{k} {label}", fv == want and brute_force_faces(s) == fv and s.dim == k,
                      "shape", shape=str(s), f=fv)
    # every configuration of small manifolds: formula vs explicit faces
    bad = []
    for mf in (interval(4), circle(3)):
        for k in range(5 if profile == "full" else 4):
            for c in enumerate_configurations(mf, k):
                s = shape(mf, c)
                if s.dim != k or f_vector(s) != brute_force_faces(s):
                    bad.append(str(c))
    rep.check("all small configurations", not bad, "shape", failures=bad[:5])
    return rep


def item_posets(algebras, profile, cache) -> Report:
    rep = Report()
    for n in range(1, 5):
        for m in (interval(n), circle(n)):
            p = splitting_poset(m)
            b = order_complex_homology(p)
            rep.check(str(m), all(x == 0 for x in b) and mobius_bounded(p) == 0, "splitting-poset",
                      reduced_betti=b, elements=len(p.elements))
    return rep


def item_multiplicity(algebras, profile, cache) -> Report:
    rep = Report()
    for m, A, M in _instances(algebras, profile):
        full = cache.model(m, A, M)
        free = cache.model(m, A, M, 3, 1)
        b1 = betti_numbers(full.complex, check=False)[:3]
        b2 = betti_numbers(free.complex, check=False)[:3]
        rep.check(f"{A.name} {m}", b1 == b2, "multiplicity-free", towers=b1, tower_free=b2)
    return rep


def item_stabilization(algebras, profile, cache) -> Report:
    rep = Report()
    budget = 1_000_000 if profile == "full" else 200_000
    for spec in (("truncated_polynomial", 2), ("matrix_algebra", 2)):
        A = builtin(*spec)
        r = stabilization_study(A, None, range(2, 7), 2, budget=budget)
        rep.extend(r, f"{A.name}: ")
    return rep


ITEMS: list[tuple[int, str, Callable]] = [
    (1, "complex validity", item_complex_validity),
    (2, "skein module and H0", item_skein),
    (3, "contractibility of balls", item_contractible),
    (4, "disjoint union", item_disjoint_union),
    (5, "gluing", item_gluing),
    (6, "Hochschild characterizing properties", item_hochschild_properties),
    (7, "oracle agreement", item_oracle),
    (8, "explicit comparison map", item_comparison),
    (9, "shape map", item_shape),
    (10, "splitting posets", item_posets),
    (11, "multiplicity robustness", item_multiplicity),
    (12, "stabilization study", item_stabilization),
]


def run_item(number: int, profile: str = "quick", algebras: Sequence[Algebra] | None = None,
             cache: _Cache | None = None) -> Report:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    algebras = list(algebras) if algebras is not None else default_algebras(profile)
    cache = cache or _Cache()
    for n, _, fn in ITEMS:
        if n == number:
            try:
                with _rationals():
                    return fn(algebras, profile, cache)
            except (ArithmeticError, AssertionError, ValueError, IndexError, BudgetExceeded) as exc:
                rep = Report()
                rep.check("raised", False, "error", error=f"{type(exc).__name__}: {exc}")
                return rep
    raise KeyError(number)


def run_all(profile: str = "quick", algebras: Sequence[Algebra] | None = None,
            items: Sequence[int] | None = None, timings: bool = False) -> Report:
    algebras = list(algebras) if algebras is not None else default_algebras(profile)
    cache = _Cache()
    rep = Report(title=f"verify all ({profile})",
                 config={"profile": profile, "algebras": [A.name for A in algebras],
                         "field": str(algebras[0].field) if algebras else "Q"})
    for n, title, _ in ITEMS:
        if items is not None and n not in items:
            continue
        t0 = time.perf_counter()
        sub = run_item(n, profile, algebras, cache)
        hard = [c for c in sub.checks if c.status != INFO]
        failures = [{"check": c.name, "witness": c.witness} for c in sub.checks if c.status == FAIL]
        witness = {"subchecks": len(hard), "failures": failures}
        if n == 12:
            witness["findings"] = {k: v for k, v in sub.tables.items()}
        if timings:
            witness["seconds"] = round(time.perf_counter() - t0, 2)
        if not hard:
            failures.append({"check": "no checks ran", "witness": {}})
        rep.checks.append(Check(f"A{n} {title}", FAIL if failures else PASS, f"acceptance-{n}", witness))
        rep.tables[f"A{n}"] = {c.name: c.status for c in sub.checks}
    return rep
