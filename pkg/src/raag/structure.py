"""Cyclic reduction, splitness, roots, primitivity and cyclic conjugacy."""

from __future__ import annotations

from dataclasses import dataclass

from .normalform import PreconditionError
from .words import (
    DEFAULT_CAP,
    CapExceeded,
    GroupElement,
    _pile,
    dependence_dag,
    enumerate_geodesic_prefixes,
    identity,
)

__all__ = [
    "CyclicReduction",
    "are_conjugate_cyclically_reduced",
    "cyclic_conjugates",
    "cyclically_reduce",
    "extract_nth_roots",
    "is_cyclically_reduced",
    "is_non_split",
    "is_primitive",
    "is_strongly_non_split",
    "power",
]


def is_cyclically_reduced(g: GroupElement) -> bool:
    """``|g^2| == 2|g|``."""
    return len(_pile(g.graph.adjacency, g.word, g.word)) == 2 * len(g)


@dataclass(frozen=True)
class CyclicReduction:
    """``g = u^-1 h u`` geodesic with ``h`` cyclically reduced."""

    u: GroupElement
    h: GroupElement


def _end_letters(g: GroupElement) -> tuple[set, set]:
    first = {u.word[0] for u in enumerate_geodesic_prefixes(g, 1)}
    last = {u.word[0].inverse() for u in enumerate_geodesic_prefixes(g.inverse(), 1)}
    return first, last


def cyclically_reduce(g: GroupElement) -> CyclicReduction:
    """Strip ``x^-e ... x^e`` pairs from the ends until none is left.

    When several letters could be stripped, the smallest vertex in the
    default order goes first.
    """
    u = identity(g.graph)
    rank = g.graph.rank
    while len(g) >= 2:
        first, last = _end_letters(g)
        candidates = [x for x in first if x.inverse() in last]
        if not candidates:
            break
        x = min(candidates, key=lambda y: (rank[y.vertex], y.sign))
        xe = GroupElement(g.graph, [x.inverse()])  # g = x * h * x^-1 = xe^-1 h xe
        g = xe * g * xe.inverse()
        u = xe * u
    return CyclicReduction(u=u, h=g)


def is_non_split(g: GroupElement) -> bool:
    return g.graph.induced_subgraph_connected(g.support)


def is_strongly_non_split(g: GroupElement) -> bool:
    """Non-split, nontrivial, and no outside vertex commutes with the whole support."""
    if not g or not is_non_split(g):
        return False
    supp = g.support
    adj = g.graph.adjacency
    return all(adj[v] & supp for v in g.graph.vertices if v not in supp)


def power(g: GroupElement, n: int) -> GroupElement:
    if n < 0:
        raise ValueError("n must be non-negative")
    return g ** n


def extract_nth_roots(m: GroupElement, n: int, cap: int = DEFAULT_CAP) -> list[GroupElement]:
    """All ``g`` with ``g^n = m``, found among the geodesic prefixes of length ``|m|/n``.

    Empty when ``m`` is not cyclically reduced or ``n`` does not divide ``|m|``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not m:
        return [m]
    if len(m) % n or not is_cyclically_reduced(m):
        return []
    return [u for u in enumerate_geodesic_prefixes(m, len(m) // n, cap) if u ** n == m]


def is_primitive(g: GroupElement, cap: int = DEFAULT_CAP) -> bool:
    if not g:
        raise PreconditionError("the identity is not primitive by definition")
    h = cyclically_reduce(g).h
    size = len(h)
    for d in range(1, size):
        if size % d == 0 and extract_nth_roots(h, size // d, cap):
            return False
    return True


def cyclic_conjugates(g: GroupElement, cap: int = DEFAULT_CAP) -> set[GroupElement]:
    """Closure of ``{g}`` under ``g1 g2 -> g2 g1`` over all geodesic splits."""
    seen = {g}
    todo = [g]
    while todo:
        x = todo.pop()
        dag = dependence_dag(x)
        for c in dag.all_ideals(cap):
            y = GroupElement(x.graph, dag.suffix(c) + dag.prefix(c))
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"more than {cap} cyclic conjugates")
                todo.append(y)
    return seen


def are_conjugate_cyclically_reduced(h1: GroupElement, h2: GroupElement, cap: int = DEFAULT_CAP) -> bool:
    h1._same_graph(h2)
    for name, h in (("h1", h1), ("h2", h2)):
        if not is_cyclically_reduced(h):
            raise PreconditionError(f"{name} = {h} is not cyclically reduced")
    if len(h1) != len(h2) or h1.support != h2.support:
        return False
    return h2 in cyclic_conjugates(h1, cap)
