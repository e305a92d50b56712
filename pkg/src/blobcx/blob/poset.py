"""Refinement posets of splittings and the homology of their order complexes.

A splitting of ``interval(N)`` cuts it at any subset of the interior gaps
``1..N-1``; a splitting of ``circle(N)`` cuts at a nonempty set of gaps so
that every piece is an interval.  ``S <= T`` when ``S`` refines ``T``, i.e.
``S`` cuts at a superset of ``T``'s gaps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..chain import ChainComplex, betti_numbers
from ..linalg import SparseMatrix, default_field
from .manifold import Manifold

__all__ = [
    "Poset",
    "splitting_poset",
    "order_complex",
    "order_complex_homology",
    "mobius_bounded",
    "PosetTooLarge",
]

POSET_LIMIT = 1 << 12


class PosetTooLarge(RuntimeError):
    pass


@dataclass
class Poset:
    elements: list
    leq: object  # callable (a, b) -> bool

    def less(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def chains(self) -> list[tuple]:
        """All nonempty chains, each sorted from bottom to top."""
        n = len(self.elements)
        up = [[j for j in range(n) if self.less(self.elements[i], self.elements[j])] for i in range(n)]
        out = []

        def grow(chain):
            out.append(tuple(chain))
            for j in up[chain[-1]]:
                grow(chain + [j])

        for i in range(n):
            grow([i])
        return out


def splitting_poset(m: Manifold, limit: int = POSET_LIMIT) -> Poset:
    if m.kind == "interval":
        gaps = range(1, m.n)
        sets = [frozenset(c) for r in range(m.n) for c in itertools.combinations(gaps, r)]
    elif m.kind == "circle":
        sets = [frozenset(c) for r in range(1, m.n + 1) for c in itertools.combinations(range(m.n), r)]
    else:
        raise ValueError("splittings are defined for a circle or an interval")
    if len(sets) > limit:
        raise PosetTooLarge(f"{len(sets)} splittings exceeds the limit of {limit}")
    return Poset(sets, lambda s, t: s >= t)


def order_complex(p: Poset, field=None) -> ChainComplex:
    """Augmented simplicial chain complex of the nerve (degree -1 is the empty simplex)."""
    field = field if field is not None else default_field()
    chains = p.chains()
    by_dim: dict[int, list] = {}
    for c in chains:
        by_dim.setdefault(len(c) - 1, []).append(c)
    top = max(by_dim) if by_dim else -1
    index = {c: i for cs in by_dim.values() for i, c in enumerate(cs)}
    dims = {-1: 1, **{k: len(by_dim.get(k, [])) for k in range(top + 1)}}
    bounds = {}
    for k in range(0, top + 1):
        entries = []
        for j, c in enumerate(by_dim[k]):
            if k == 0:
                entries.append((0, j, 1))
                continue
            for i in range(len(c)):
                face = c[:i] + c[i + 1:]
                entries.append((index[face], j, -1 if i % 2 else 1))
        bounds[k] = SparseMatrix(dims[k - 1], dims[k], entries, field)
    return ChainComplex(dims, bounds, field=field, name="order complex")


def order_complex_homology(p: Poset, field=None) -> list[int]:
    """Reduced betti numbers in degrees ``-1, 0, 1, ...``."""
    return betti_numbers(order_complex(p, field))


def mobius_bounded(p: Poset) -> int:
    """``mu(0, 1)`` after adjoining a new bottom and top.

    Equals the reduced Euler characteristic of the order complex.
    """
    n = len(p.elements)
    # order elements by a linear extension: fewer predecessors first
    order = sorted(range(n), key=lambda i: sum(p.less(p.elements[j], p.elements[i]) for j in range(n)))
    mu = {}
    for i in order:
        mu[i] = -1 - sum(mu[j] for j in order if p.less(p.elements[j], p.elements[i]))
    return -1 - sum(mu.values())
