"""Cone-product polyhedra attached to blob configurations.

The nesting forest of a configuration gives an expression over ``pt``,
products and cones: a forest is the product of its trees, and a tree is the
cone on the forest of its children.  Face counts come straight from the
expression; :func:`brute_force_faces` expands the polyhedron into an explicit
face list as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .manifold import Manifold, _contains

__all__ = [
    "Shape",
    "PT",
    "nesting_forest",
    "shape",
    "f_vector",
    "brute_force_faces",
    "simplex_f_vector",
    "cube_f_vector",
]


@dataclass(frozen=True)
class Shape:
    op: str  # "pt", "product" or "cone"
    args: tuple = ()

    def __str__(self):
        if self.op == "pt":
            return "pt"
        if self.op == "cone":
            return f"cone({self.args[0]})"
        return " x ".join(f"({a})" if a.op == "product" else str(a) for a in self.args)

    @property
    def dim(self) -> int:
        if self.op == "pt":
            return 0
        if self.op == "cone":
            return self.args[0].dim + 1
        return sum(a.dim for a in self.args)


PT = Shape("pt")


def _product(parts: list) -> Shape:
    parts = [p for p in parts if p.op != "pt"]
    if not parts:
        return PT
    if len(parts) == 1:
        return parts[0]
    return Shape("product", tuple(parts))


def _encloses(m: Manifold, outer, inner) -> bool:
    if outer.support == inner.support:
        return outer.level > inner.level
    return _contains(m, outer, inner)


def nesting_forest(m: Manifold, config: tuple) -> dict:
    """Parent index of every arc (``None`` for roots).

    The parent is the innermost arc enclosing it; within a tower the parent
    of level ``l`` is level ``l + 1``.
    """
    parent = {}
    for i, a in enumerate(config):
        outer = [j for j, b in enumerate(config) if j != i and _encloses(m, b, a)]
        inner = [j for j in outer if not any(_encloses(m, config[j], config[o]) for o in outer)]
        parent[i] = inner[0] if inner else None
    return parent


def shape(m: Manifold, config: tuple) -> Shape:
    parent = nesting_forest(m, config)
    children: dict = {i: [] for i in parent}
    roots = []
    for i, p in parent.items():
        (roots if p is None else children[p]).append(i)

    def tree(i: int) -> Shape:
        return Shape("cone", (_product([tree(c) for c in children[i]]),))

    return _product([tree(r) for r in roots])


def f_vector(s: Shape) -> list[int]:
    """``f[i]`` = number of ``i``-dimensional faces."""
    if s.op == "pt":
        return [1]
    if s.op == "cone":
        f = f_vector(s.args[0])
        out = [0] * (len(f) + 1)
        for i, x in enumerate(f):
            out[i] += x
            out[i + 1] += x
        out[0] += 1  # apex
        return out
    out = [1]
    for a in s.args:
        g = f_vector(a)
        new = [0] * (len(out) + len(g) - 1)
        for i, x in enumerate(out):
            for j, y in enumerate(g):
                new[i + j] += x * y
        out = new
    return out


def brute_force_faces(s: Shape) -> list[int]:
    """Face counts from an explicit list of faces (vertex sets with dimensions)."""
    counter = iter(range(1 << 30))

    def build(t: Shape):
        if t.op == "pt":
            v = next(counter)
            return {(frozenset([v]), 0)}
        if t.op == "cone":
            faces = build(t.args[0])
            apex = next(counter)
            return faces | {(f | {apex}, d + 1) for f, d in faces} | {(frozenset([apex]), 0)}
        faces = {(frozenset([()]), 0)}
        for a in t.args:
            fa = build(a)
            faces = {(frozenset((*x, y) for x in f for y in g), d + e) for f, d in faces for g, e in fa}
        return faces

    faces = build(s)
    out = [0] * (s.dim + 1)
    for _, d in faces:
        out[d] += 1
    return out


def simplex_f_vector(k: int) -> list[int]:
    return [comb(k + 1, i + 1) for i in range(k + 1)]


def cube_f_vector(k: int) -> list[int]:
    return [comb(k, i) * 2 ** (k - i) for i in range(k + 1)]
