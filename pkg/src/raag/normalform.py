"""Starting generators, conical elements and CGW normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import DefiningGraph, VertexOrder
from .words import (
    GroupElement,
    Letter,
    _normal_word,
    dependence_dag,
    enumerate_geodesic_prefixes,
    find_innermost_cancellation,
    identity,
    is_geodesic,
)

__all__ = [
    "ConicalConjugateResult",
    "PreconditionError",
    "apex",
    "choose_order_for_pair",
    "conical_conjugate",
    "is_conical",
    "is_normal_word",
    "is_pyramidal",
    "is_sd_conical",
    "normal_form",
    "starting_generators",
    "tail_conical_decomposition",
]


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""


def _order(g: GroupElement, order: VertexOrder | None) -> VertexOrder:
    if order is None:
        return g.graph.default_order()
    if order.graph != g.graph:
        raise ValueError("order belongs to a different graph")
    return order


def starting_generators(g: GroupElement) -> frozenset[str]:
    """Vertices ``v`` such that some reduced word for ``g`` starts with ``v^{+-1}``."""
    if not g:
        return frozenset()
    return frozenset(u.word[0].vertex for u in enumerate_geodesic_prefixes(g, 1))


def is_conical(g: GroupElement) -> bool:
    return len(starting_generators(g)) == 1


def apex(g: GroupElement) -> str:
    s = starting_generators(g)
    if len(s) != 1:
        raise PreconditionError(f"{g} is not conical")
    return next(iter(s))


def is_pyramidal(g: GroupElement, order: VertexOrder | None = None) -> bool:
    order = _order(g, order)
    s = starting_generators(g)
    if len(s) != 1:
        return False
    return next(iter(s)) == order.minimum(g.support)


def is_sd_conical(g: GroupElement, order: VertexOrder | None = None) -> bool:
    """Conical, and the apex is adjacent to every smaller vertex."""
    order = _order(g, order)
    s = starting_generators(g)
    if len(s) != 1:
        return False
    v0 = next(iter(s))
    nbrs = g.graph.adjacency[v0]
    return all(v in nbrs for v in order.vertices[: order.rank[v0]])


def normal_form(g: GroupElement, order: VertexOrder | None = None) -> tuple:
    """The CGW normal form of ``g`` under ``order``.

    Built greedily: the next letter is always the starting generator of the
    remaining element that is largest under ``order``.
    """
    order = _order(g, order)
    if order.vertices == g.graph.vertices:
        return g.word
    return _normal_word(g.graph.adjacency, g.word, order.rank)


def is_normal_word(graph: DefiningGraph, word: Sequence, order: VertexOrder | None = None) -> bool:
    word = tuple(Letter(*x) for x in word)
    if order is None:
        order = graph.default_order()
    if find_innermost_cancellation(graph, word) is not None:
        return False
    for i in range(len(word)):
        suffix = GroupElement(graph, word[i:])
        if word[i].vertex != order.maximum(starting_generators(suffix)):
            return False
    return True


def tail_conical_decomposition(h: GroupElement, v: str) -> tuple[GroupElement, GroupElement]:
    """The geodesic split ``h = t * p`` with ``p`` v-conical and ``v`` not in ``supp(t)``.

    ``p`` is read off the upward closure of the first ``v``-letter in the
    dependence DAG; ``t`` is the rest.
    """
    if v not in h.support:
        raise PreconditionError(f"{v} is not in the support of {h}")
    if not h.graph.induced_subgraph_connected(h.support):
        raise PreconditionError(f"{h} is split")
    dag = dependence_dag(h)
    first = next(i for i, x in enumerate(dag.word) if x.vertex == v)
    up = dag.upward_closure(first)
    t = [x for i, x in enumerate(dag.word) if i not in up]
    p = [x for i, x in enumerate(dag.word) if i in up]
    return GroupElement._from_reduced(h.graph, t), GroupElement._from_reduced(h.graph, p)


@dataclass(frozen=True)
class ConicalConjugateResult:
    """``g = a p a^-1 = b^-1 p b`` with ``g^k = a b`` geodesic and ``p`` v0-conical."""

    p: GroupElement
    a: GroupElement
    b: GroupElement
    k: int
    v0: str

    def check(self, g: GroupElement) -> list[str]:
        """Names of violated invariants (empty when all hold)."""
        bad = []
        if g != self.a * self.p * self.a.inverse():
            bad.append("g = a p a^-1")
        if g != self.b.inverse() * self.p * self.b:
            bad.append("g = b^-1 p b")
        if g ** self.k != self.a * self.b:
            bad.append("g^k = a b")
        if not is_geodesic([self.a, self.b]):
            bad.append("a b geodesic")
        if not 0 <= self.k <= len(g.graph) - 1:
            bad.append("0 <= k <= |V|-1")
        if len(self.p) != len(g):
            bad.append("|p| = |g|")
        if starting_generators(self.p) != {self.v0}:
            bad.append("p v0-conical")
        return bad


def conical_conjugate(g: GroupElement, v0: str) -> ConicalConjugateResult:
    """Conjugate a non-split cyclically reduced ``g`` to a ``v0``-conical element.

    Repeats ``g_i = t_i p_i -> g_{i+1} = p_i t_i`` until the current element
    is v0-conical.
    """
    from .structure import is_cyclically_reduced

    if v0 not in g.support:
        raise PreconditionError(f"{v0} is not in the support of {g}")
    if not g.graph.induced_subgraph_connected(g.support):
        raise PreconditionError(f"{g} is split")
    if not is_cyclically_reduced(g):
        raise PreconditionError(f"{g} is not cyclically reduced")
    one = identity(g.graph)
    ts: list[GroupElement] = []
    ps: list[GroupElement] = []
    current = g
    limit = len(g.graph) - 1
    while True:
        t, p = tail_conical_decomposition(current, v0)
        if not t:
            break
        if len(ts) == limit:
            raise AssertionError(f"no {v0}-conical conjugate of {g} within {limit} steps")
        ts.append(t)
        ps.append(p)
        current = p * t
    a = one
    for t in ts:
        a = a * t
    b = one
    for p in reversed(ps):
        b = b * p
    return ConicalConjugateResult(p=current, a=a, b=b, k=len(ts), v0=v0)


def choose_order_for_pair(g1: GroupElement, g2: GroupElement) -> tuple[VertexOrder, str, str]:
    """An order and apexes making both conical conjugates SD-conical.

    Both elements must be non-split and cyclically reduced.  Shared support:
    the default-least shared vertex goes first and serves as both apexes.  Disjoint supports: the default-least adjacent pair
    ``(v1, v2)`` goes first, in that order.
    """
    from .structure import is_cyclically_reduced

    g1._same_graph(g2)
    for name, g in (("g1", g1), ("g2", g2)):
        if not g or not g.graph.induced_subgraph_connected(g.support):
            raise PreconditionError(f"{name} = {g} is trivial or split")
        if not is_cyclically_reduced(g):
            raise PreconditionError(f"{name} = {g} is not cyclically reduced")
    default = g1.graph.default_order()
    shared = g1.support & g2.support
    if shared:
        v0 = default.minimum(shared)
        return default.with_first(v0), v0, v0
    adj = g1.graph.adjacency
    rank = default.rank
    pairs = [(v1, v2) for v1 in g1.support for v2 in g2.support if v2 in adj[v1]]
    if not pairs:
        # strongly non-split roots always have an edge across
        raise PreconditionError("no edge between the supports; neither root is strongly non-split")
    v1, v2 = min(pairs, key=lambda p: (rank[p[0]], rank[p[1]]))
    return default.with_first(v1, v2), v1, v2
