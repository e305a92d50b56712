"""Command-line front end.

    blobcx algebra validate SPEC
    blobcx hochschild SPEC [--cap D] [--module M]
    blobcx blob SPEC [--manifold circle|interval] [--sites N] [--cap D] [--marked] [--module M]
    blobcx compare SPEC [--sites N] [--cap D] [--study NMIN..NMAX]
    blobcx verify all [--profile quick|full]

``SPEC`` is a JSON spec file or a builtin such as ``truncated_polynomial:2``.
The JSON report goes to stdout (or ``--out``); a summary goes to stderr.
Exit status: 0 all checks passed, 1 a check failed, 2 usage or parse error,
3 refused by the size budget.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import __version__
from .algebra import free_bimodule, regular_bimodule, validate, validate_bimodule
from .blob.manifold import circle, enumerate_configurations, interval
from .blob.model import DEFAULT_BUDGET, BudgetExceeded, build_blob_complex, estimate_size, skein
from .chain import homology
from .chain import validate as validate_complex
from .comparison import Phi2Inconsistent, build_phi, h0_comparison, stabilization_study, verify_phi
from .hochschild import build_hochschild
from .linalg import default_field
from .report import Report
from .specfile import SpecError, resolve_algebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _spec_arg(args) -> str:
    # "truncated_polynomial 2" may arrive as two positional words
    return ":".join(args.spec) if isinstance(args.spec, list) else args.spec


def _digest(arg: str) -> str:
    p = Path(arg)
    data = p.read_bytes() if p.is_file() else arg.encode()
    return hashlib.sha256(data).hexdigest()


def _load(args):
    field = default_field()
    args.spec = _spec_arg(args)
    A, mods = resolve_algebra(args.spec, field)
    return A, mods, field


def _pick_module(A, mods, choice: str | None):
    if choice in (None, ""):
        return mods[0] if mods else regular_bimodule(A)
    if choice == "regular":
        return regular_bimodule(A)
    if choice == "free":
        return free_bimodule(A)
    for i, M in enumerate(mods):
        if choice in (M.name, str(i)):
            return M
    raise _Usage(f"unknown module {choice!r}; use regular, free, or a name/index from the spec file")


def _config(args, field, **extra) -> dict:
    cfg = {"command": args.command, "version": __version__, "spec": args.spec,
           "input_digest": _digest(args.spec), "field": str(field)}
    cfg.update(extra)
    return cfg


def _homology_table(cx) -> dict:
    hs = homology(cx, check=False)
    return {
        "dims": [cx.dim(k) for k in cx.degrees],
        "betti": [h.betti for h in hs],
        "top_degree_upper_bound_only": cx.truncated,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_algebra_validate(args) -> Report:
    A, mods, field = _load(args)
    rep = Report(title=f"validate {A.name}", config=_config(args, field, dim=A.dim))
    rep.extend(validate(A), "algebra: ")
    for M in mods:
        rep.extend(validate_bimodule(M), f"{M.name}: ")
    return rep


def cmd_hochschild(args) -> Report:
    A, mods, field = _load(args)
    M = _pick_module(A, mods, args.module)
    hc = build_hochschild(A, M, args.cap)
    rep = Report(title=f"Hochschild homology of {M.name}",
                 config=_config(args, field, cap=args.cap, module=M.name))
    rep.extend(validate_complex(hc.complex))
    table = _homology_table(hc.complex)
    table["hh"] = table["betti"][: args.cap]
    rep.tables["hochschild"] = table
    return rep


def cmd_blob(args) -> Report:
    A, mods, field = _load(args)
    if args.sites < 1 or args.cap < 1:
        raise _Usage("--sites and --cap must be at least 1")
    if args.marked and args.manifold != "circle":
        raise _Usage("--marked needs --manifold circle")
    m = circle(args.sites, args.marked) if args.manifold == "circle" else interval(args.sites)
    M = _pick_module(A, mods, args.module) if args.marked else None
    max_level = 1 if args.tower_free else None
    est = estimate_size(m, A, M, args.cap, max_level)
    if est > args.budget:
        raise BudgetExceeded(est, args.budget)
    model = build_blob_complex(m, A, M, args.cap, max_level=max_level, budget=args.budget)
    cfg = _config(args, field, manifold=str(m), sites=args.sites, cap=args.cap, budget=args.budget,
                  tower_free=args.tower_free, module=M.name if M else None)
    rep = Report(title=f"blob complex of {m}", config=cfg)
    rep.extend(validate_complex(model.complex))
    table = _homology_table(model.complex)
    table["configurations"] = [len(enumerate_configurations(m, k, max_level)) for k in range(args.cap + 1)]
    table["skein_dim"], _ = skein(m, A, M, model=model)
    rep.tables["blob"] = table
    return rep


def _range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise _Usage(f"--study expects NMIN..NMAX, got {text!r}") from None


def cmd_compare(args) -> Report:
    A, mods, field = _load(args)
    M = _pick_module(A, mods, args.module)
    study = _range(args.study)
    cfg = _config(args, field, sites=args.sites, cap=args.cap, study=[study.start, study.stop - 1],
                  module=M.name, budget=args.budget)
    rep = Report(title=f"comparison map for {M.name}", config=cfg)
    try:
        cm = build_phi(A, M, args.sites, max(2, args.cap))
    except Phi2Inconsistent as exc:
        rep.check("phi2 solvable", False, "comparison-chain-map", error=str(exc))
        return rep
    rep.extend(verify_phi(cm))
    rep.extend(h0_comparison(cm))
    rep.extend(stabilization_study(A, M, study, 2, budget=args.budget))
    return rep


def cmd_verify_all(args) -> Report:
    from .verify import run_all

    rep = run_all(args.profile)
    rep.config.update({"command": "verify all", "version": __version__, "input_digest": _digest(args.profile)})
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blobcx", description="Exact finite blob and Hochschild complexes.")
    p.add_argument("--version", action="version", version=f"blobcx {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="algebra specifications")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    v = alg_sub.add_parser("validate", parents=[common], help="parse and check the algebra axioms")
    v.add_argument("spec", nargs="+", help="spec file or builtin name and parameters")
    v.set_defaults(func=cmd_algebra_validate)

    h = sub.add_parser("hochschild", parents=[common], help="Hochschild complex dims and homology")
    h.add_argument("spec", nargs="+", help="spec file or builtin name and parameters")
    h.add_argument("--cap", type=int, default=4)
    h.add_argument("--module", help="regular, free, or a bimodule from the spec file")
    h.set_defaults(func=cmd_hochschild)

    b = sub.add_parser("blob", parents=[common], help="assemble a finite blob complex")
    b.add_argument("spec", nargs="+", help="spec file or builtin name and parameters")
    b.add_argument("--manifold", choices=("circle", "interval"), default="circle")
    b.add_argument("--sites", type=int, default=3)
    b.add_argument("--cap", type=int, default=3)
    b.add_argument("--marked", action="store_true", help="put a bimodule at site 0 of the circle")
    b.add_argument("--module", help="regular, free, or a bimodule from the spec file")
    b.add_argument("--tower-free", action="store_true", help="forbid equal arcs (multiplicity-free variant)")
    b.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of generators")
    b.set_defaults(func=cmd_blob)

    c = sub.add_parser("compare", parents=[common], help="comparison map and stabilization table")
    c.add_argument("spec", nargs="+", help="spec file or builtin name and parameters")
    c.add_argument("--sites", type=int, default=3)
    c.add_argument("--cap", type=int, default=2)
    c.add_argument("--study", default="2..5")
    c.add_argument("--module", help="regular, free, or a bimodule from the spec file")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=cmd_compare)

    ver = sub.add_parser("verify", help="acceptance suite")
    ver_sub = ver.add_subparsers(dest="action", required=True)
    va = ver_sub.add_parser("all", parents=[common], help="run every acceptance item")
    va.add_argument("--profile", choices=("quick", "full"), default="quick")
    va.set_defaults(func=cmd_verify_all, spec="verify")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
    except (SpecError, _Usage, FileNotFoundError) as exc:
        print(f"blobcx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"blobcx: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, IndexError) as exc:
        print(f"blobcx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = rep.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    print(rep.summary(), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
