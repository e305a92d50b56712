"""JSON algebra/bimodule specification files.

Schema (rationals are integers or ``[numerator, denominator]`` pairs)::

    {
      "name": "truncated_polynomial(2)",
      "dim": 2,
      "labels": ["1", "x"],
      "unit": [1, 0],
      "multiplication": [[i, j, k, num, den], ...],   # e_i e_j has e_k-coefficient num/den
      "involution": [[...], ...],                      # optional dense matrix, column j = e_j*
      "bimodules": [                                   # optional
        {"name": "...", "dim": 2, "labels": [...],
         "left":  [[i, m, k, num, den], ...],          # e_i . m_m has m_k-coefficient num/den
         "right": [[m, j, k, num, den], ...]}
      ]
    }
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra import Algebra, Bimodule, builtin, regular_bimodule

__all__ = ["SpecError", "load_spec", "parse_spec", "dump_spec", "resolve_algebra"]


class SpecError(ValueError):
    """Malformed specification; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise SpecError(where, "booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(t, int) and not isinstance(t, bool) for t in x):
        if x[1] == 0:
            raise SpecError(where, "zero denominator")
        return Fraction(x[0], x[1])
    raise SpecError(where, f"expected an integer or [numerator, denominator], got {x!r}")


def _index(x, bound: int, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < bound:
        raise SpecError(where, f"index {x!r} outside 0..{bound - 1}")
    return x


def _dim(doc: dict, where: str) -> int:
    d = doc.get("dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise SpecError(f"{where}dim", f"expected a positive integer, got {d!r}")
    return d


def _triples(entries, bounds: tuple, where: str) -> dict:
    if not isinstance(entries, list):
        raise SpecError(where, "expected a list of [i, j, k, num, den] entries")
    out: dict = {}
    for n, e in enumerate(entries):
        w = f"{where}[{n}]"
        if not isinstance(e, list) or len(e) not in (4, 5):
            raise SpecError(w, "expected [i, j, k, num, den]")
        i, j, k = (_index(e[t], bounds[t], w) for t in range(3))
        c = _rational(e[3:] if len(e) == 5 else e[3], w)
        v = out.setdefault((i, j), {})
        v[k] = v.get(k, 0) + c
    return out


def parse_spec(doc: dict, field=None) -> tuple[Algebra, list[Bimodule]]:
    if not isinstance(doc, dict):
        raise SpecError("<root>", "expected a JSON object")
    d = _dim(doc, "")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != d):
        raise SpecError("labels", f"expected {d} labels")
    unit = doc.get("unit")
    if not isinstance(unit, list) or len(unit) != d:
        raise SpecError("unit", f"expected a list of {d} coordinates")
    unit_vec = {i: _rational(x, f"unit[{i}]") for i, x in enumerate(unit)}
    prods = _triples(doc.get("multiplication", []), (d, d, d), "multiplication")
    inv = doc.get("involution")
    if inv is not None:
        if not isinstance(inv, list) or len(inv) != d or any(not isinstance(r, list) or len(r) != d for r in inv):
            raise SpecError("involution", f"expected a {d}x{d} matrix")
        inv = [[_rational(x, f"involution[{r}][{c}]") for c, x in enumerate(row)] for r, row in enumerate(inv)]
    A = Algebra(d, prods, unit_vec, labels=labels, involution=inv, name=str(doc.get("name", "algebra")),
                field=field)
    mods = []
    for n, md in enumerate(doc.get("bimodules", [])):
        w = f"bimodules[{n}]."
        if not isinstance(md, dict):
            raise SpecError(w[:-1], "expected an object")
        dm = _dim(md, w)
        mlabels = md.get("labels")
        if mlabels is not None and (not isinstance(mlabels, list) or len(mlabels) != dm):
            raise SpecError(w + "labels", f"expected {dm} labels")
        left = _triples(md.get("left", []), (d, dm, dm), w + "left")
        right = _triples(md.get("right", []), (dm, d, dm), w + "right")
        mods.append(Bimodule(A, dm, left, right, labels=mlabels, name=str(md.get("name", f"module{n}"))))
    return A, mods


def load_spec(path, field=None) -> tuple[Algebra, list[Bimodule]]:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}", exc.msg) from None
    return parse_spec(doc, field)


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else [x.numerator, x.denominator]


def _entries(table) -> list:
    out = []
    for (i, j), vec in sorted(table.items()):
        for k, c in sorted(vec.items()):
            c = Fraction(c)
            out.append([i, j, k, c.numerator, c.denominator])
    return out


def dump_spec(algebra: Algebra, modules=()) -> dict:
    doc = {
        "name": algebra.name,
        "dim": algebra.dim,
        "labels": list(algebra.basis_labels),
        "unit": [_num(algebra.unit.get(i, 0)) for i in range(algebra.dim)],
        "multiplication": _entries(algebra.structure_constants()),
    }
    if algebra.involution is not None:
        doc["involution"] = [[_num(x) for x in row] for row in algebra.involution.to_dense()]
    if modules:
        doc["bimodules"] = []
        for M in modules:
            left = {(i, m): M._left[i][m] for i in range(algebra.dim) for m in range(M.dim) if M._left[i][m]}
            right = {(m, j): M._right[m][j] for m in range(M.dim) for j in range(algebra.dim) if M._right[m][j]}
            doc["bimodules"].append({"name": M.name, "dim": M.dim, "labels": list(M.basis_labels),
                                     "left": _entries(left), "right": _entries(right)})
    return doc


def resolve_algebra(arg: str, field=None) -> tuple[Algebra, list[Bimodule]]:
    """A spec path, or a builtin name such as ``truncated_polynomial:2``.

    Builtins come with their regular bimodule.
    """
    p = Path(arg)
    if p.suffix == ".json" or p.exists():
        return load_spec(p, field)
    name, *params = arg.replace(" ", ":").split(":")
    try:
        A = builtin(name, *params, field=field)
    except (ValueError, IndexError) as exc:
        raise SpecError("algebra", str(exc)) from None
    return A, [regular_bimodule(A)]
