"""Combinatorial 1-manifolds, arcs and blob configurations.

Labels live on sites; blob endpoints live in the gaps between sites.

* ``circle(N)``: sites ``0..N-1``; gap ``g`` sits clockwise after site ``g``.
  Arc ``(a, b)`` with ``a != b`` covers sites ``a+1, ..., b`` (mod N).  Arc
  ``(g, g)`` is the *full arc* ``F_g``: every site is covered and only a small
  piece of gap ``g`` is left out.
* ``interval(N)``: sites ``0..N-1`` and gaps ``0..N``; gap ``g`` sits just
  before site ``g``.  Arc ``(g1, g2)`` with ``g1 < g2`` covers sites
  ``g1..g2-1``.
* ``disjoint_union(A, B, ...)``: parts side by side; sites are numbered
  consecutively, part 0 first.

Two arcs are compatible when, as closed subsets of the manifold, they can be
placed disjoint or nested.  For proper arcs this is the nested-or-disjoint
rule on site sets.  A full arc ``F_g`` contains a proper arc exactly when
``g`` is not an interior gap of it, and two full arcs ``F_g``, ``F_h`` nest
only when ``g == h``.  Arcs with identical endpoints form a *tower*,
distinguished by ``level`` (1 = innermost).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

__all__ = [
    "Manifold",
    "Arc",
    "circle",
    "interval",
    "disjoint_union",
    "enumerate_arcs",
    "enumerate_configurations",
    "compatible",
    "canonical",
    "twigs",
    "remove_arc",
    "permutation_sign",
]


@dataclass(frozen=True)
class Manifold:
    kind: str
    n: int = 0
    marked: bool = False
    parts: tuple = ()

    def __post_init__(self):
        if self.kind not in ("circle", "interval", "union"):
            raise ValueError(f"unknown manifold kind {self.kind!r}")
        if self.kind != "union" and self.n < 1:
            raise ValueError("need at least one site")
        if self.marked and self.kind != "circle":
            raise ValueError("only circles carry a marked point")

    def __str__(self):
        if self.kind == "union":
            return " + ".join(str(p) for p in self.parts)
        return f"{'marked ' if self.marked else ''}{self.kind}({self.n})"

    @property
    def components(self) -> tuple:
        return self.parts if self.kind == "union" else (self,)

    @cached_property
    def offsets(self) -> tuple:
        out, acc = [], 0
        for p in self.components:
            out.append(acc)
            acc += p.n
        return tuple(out)

    @property
    def sites(self) -> int:
        return sum(p.n for p in self.components)

    def part(self, i: int) -> "Manifold":
        return self.components[i]

    # arc geometry ----------------------------------------------------------

    def arc_sites(self, arc: "Arc") -> tuple:
        """Global site indices covered by ``arc``, in reading order."""
        p = self.part(arc.part)
        off = self.offsets[arc.part]
        if p.kind == "interval":
            local = range(arc.start, arc.end)
        elif arc.start == arc.end:
            local = [(arc.start + 1 + i) % p.n for i in range(p.n)]
        else:
            local = [(arc.start + 1 + i) % p.n for i in range((arc.end - arc.start) % p.n)]
        return tuple(off + s for s in local)

    def arc_size(self, arc: "Arc") -> int:
        p = self.part(arc.part)
        if p.kind == "interval":
            return arc.end - arc.start
        return (arc.end - arc.start) % p.n or p.n

    def is_full(self, arc: "Arc") -> bool:
        p = self.part(arc.part)
        return p.kind == "circle" and arc.start == arc.end

    def interior_gaps(self, arc: "Arc") -> frozenset:
        p = self.part(arc.part)
        if p.kind == "interval":
            return frozenset(range(arc.start + 1, arc.end))
        if arc.start == arc.end:
            return frozenset(range(p.n)) - {arc.start}
        return frozenset((arc.start + 1 + i) % p.n for i in range(self.arc_size(arc) - 1))

    def key(self, arc: "Arc") -> tuple:
        """Canonical sort key: part, leftmost gap, larger first, inner first."""
        return (arc.part, arc.start, -self.arc_size(arc), arc.level)


class Arc(NamedTuple):
    start: int
    end: int
    level: int = 1
    part: int = 0

    @property
    def support(self) -> tuple:
        return (self.part, self.start, self.end)

    def with_level(self, level: int) -> "Arc":
        return self._replace(level=level)

    def __str__(self):
        s = f"[{self.start},{self.end}]"
        if self.part:
            s = f"{self.part}:{s}"
        return s + (f"^{self.level}" if self.level != 1 else "")


def circle(n: int, marked: bool = False) -> Manifold:
    return Manifold("circle", n, marked)


def interval(n: int) -> Manifold:
    return Manifold("interval", n)


def disjoint_union(*parts: Manifold) -> Manifold:
    flat = []
    for p in parts:
        if p.marked:
            raise ValueError("disjoint unions of marked circles are not supported")
        flat.extend(p.components)
    if not flat:
        raise ValueError("empty union")
    return Manifold("union", 0, False, tuple(flat))


def enumerate_arcs(m: Manifold) -> list[Arc]:
    """All level-1 arcs in canonical order."""
    arcs = []
    for i, p in enumerate(m.components):
        if p.kind == "circle":
            arcs += [Arc(a, b, 1, i) for a in range(p.n) for b in range(p.n)]
        else:
            arcs += [Arc(a, b, 1, i) for a in range(p.n + 1) for b in range(a + 1, p.n + 1)]
    return sorted(arcs, key=m.key)


# ---------------------------------------------------------------------------
# compatibility


def _contains(m: Manifold, outer: Arc, inner: Arc) -> bool:
    """``inner`` fits strictly inside ``outer`` (different supports)."""
    if outer.part != inner.part or outer.support == inner.support:
        return False
    if not set(m.arc_sites(inner)) < set(m.arc_sites(outer)):
        return False
    if m.is_full(outer):
        return outer.start not in m.interior_gaps(inner)
    return True


def relation(m: Manifold, a: Arc, b: Arc) -> str | None:
    """One of ``"equal"``, ``"inside"`` (a in b), ``"contains"``, ``"disjoint"`` or None."""
    if a.support == b.support:
        return "equal"
    if a.part != b.part:
        return "disjoint"
    if _contains(m, b, a):
        return "inside"
    if _contains(m, a, b):
        return "contains"
    if not set(m.arc_sites(a)) & set(m.arc_sites(b)):
        return "disjoint"
    return None


def compatible(m: Manifold, a: Arc, b: Arc) -> bool:
    return relation(m, a, b) is not None


def canonical(m: Manifold, arcs) -> tuple:
    return tuple(sorted(arcs, key=m.key))


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (distinct, comparable items)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def twigs(m: Manifold, config: tuple) -> list[Arc]:
    """Innermost arcs: level 1 of its tower, nothing else strictly inside."""
    out = []
    for a in config:
        if a.level != 1:
            continue
        if any(_contains(m, a, b) for b in config):
            continue
        out.append(a)
    return out


def remove_arc(config: tuple, i: int) -> tuple:
    """Drop ``config[i]`` and renumber the levels of its tower."""
    gone = config[i]
    out = []
    for j, a in enumerate(config):
        if j == i:
            continue
        if a.support == gone.support and a.level > gone.level:
            a = a.with_level(a.level - 1)
        out.append(a)
    return tuple(out)


def enumerate_configurations(m: Manifold, k: int, max_level: int | None = None) -> list[tuple]:
    """All canonical configurations of ``k`` pairwise compatible arcs.

    ``max_level`` bounds tower heights (``1`` gives the multiplicity-free
    variant; ``None`` allows any height up to ``k``).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return [()]
    top = k if max_level is None else min(k, max_level)
    arcs = enumerate_arcs(m)
    n = len(arcs)
    ok = [[compatible(m, arcs[i], arcs[j]) for j in range(n)] for i in range(n)]
    out = []

    def cliques(start: int, chosen: list) -> Iterator[list]:
        yield chosen
        if len(chosen) == k:
            return
        for j in range(start, n):
            if all(ok[i][j] for i in chosen):
                yield from cliques(j + 1, chosen + [j])

    for clique in cliques(0, []):
        s = len(clique)
        if s == 0 or s * top < k:
            continue
        for heights in itertools.product(range(1, top + 1), repeat=s):
            if sum(heights) != k:
                continue
            config = [arcs[i].with_level(lv) for i, h in zip(clique, heights) for lv in range(1, h + 1)]
            out.append(canonical(m, config))
    return sorted(out, key=lambda c: [m.key(a) for a in c])
