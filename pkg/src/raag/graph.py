"""Defining graphs and vertex orders.

The group G(Gamma) uses the *opposite* convention to the usual right-angled
Artin group: two distinct generators commute exactly when they are NOT
joined by an edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "DefiningGraph",
    "GraphFormatError",
    "VertexOrder",
    "complete_graph",
    "parse_graph",
    "path_graph",
    "serialize_graph",
]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GraphFormatError(ValueError):
    """Raised for malformed graph files or invalid graph data."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class DefiningGraph:
    """A finite simple graph. Non-adjacent distinct vertices commute."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    adjacency: dict[str, frozenset[str]] = field(repr=False, compare=False)
    rank: dict[str, int] = field(repr=False, compare=False)

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        vertices = tuple(vertices)
        seen: set[str] = set()
        for v in vertices:
            if not isinstance(v, str) or not _NAME.match(v):
                raise GraphFormatError(f"invalid vertex name {v!r}")
            if v in seen:
                raise GraphFormatError(f"duplicate vertex {v!r}")
            seen.add(v)
        edge_set: set[frozenset[str]] = set()
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        for e in edges:
            ends = tuple(e)
            if len(ends) == 1:  # a frozenset {v} from a loop
                raise GraphFormatError(f"loop edge at {ends[0]!r}")
            if len(ends) != 2:
                raise GraphFormatError(f"edge must have two endpoints, got {ends!r}")
            u, v = ends
            if u == v:
                raise GraphFormatError(f"loop edge at {u!r}")
            for x in (u, v):
                if x not in seen:
                    raise GraphFormatError(f"unknown endpoint {x!r}")
            key = frozenset((u, v))
            if key in edge_set:
                raise GraphFormatError(f"repeated edge {u}-{v}")
            edge_set.add(key)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "adjacency", {v: frozenset(s) for v, s in adj.items()})
        object.__setattr__(self, "rank", {v: i for i, v in enumerate(vertices)})

    def __eq__(self, other):
        if not isinstance(other, DefiningGraph):
            return NotImplemented
        return self is other or (self.vertices == other.vertices and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.adjacency

    def _check(self, *vs):
        for v in vs:
            if v not in self.adjacency:
                raise KeyError(f"unknown vertex {v!r}")

    def adjacent(self, u: str, v: str) -> bool:
        self._check(u, v)
        return v in self.adjacency[u]

    def commutes(self, u: str, v: str) -> bool:
        """True iff ``u != v`` and ``{u, v}`` is not an edge.

        A vertex does not commute with itself as a letter; cancellation logic
        relies on this.
        """
        self._check(u, v)
        return u != v and v not in self.adjacency[u]

    def neighbours(self, v: str) -> frozenset[str]:
        self._check(v)
        return self.adjacency[v]

    def induced_subgraph_connected(self, subset: Iterable[str]) -> bool:
        subset = set(subset)
        self._check(*subset)
        if not subset:
            return True
        start = next(iter(subset))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.adjacency[v]:
                if u in subset and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == subset

    def is_connected(self) -> bool:
        return self.induced_subgraph_connected(self.vertices)

    def default_order(self) -> "VertexOrder":
        return VertexOrder(self, self.vertices)

    def order(self, vertices: Sequence[str]) -> "VertexOrder":
        return VertexOrder(self, vertices)

    def __repr__(self):
        es = sorted("-".join(sorted(e, key=self.vertices.index)) for e in self.edges)
        return f"DefiningGraph({list(self.vertices)}, edges={es})"


class VertexOrder:
    """A linear order on the vertices of a graph (smallest first)."""

    __slots__ = ("graph", "vertices", "rank")

    def __init__(self, graph: DefiningGraph, vertices: Sequence[str]):
        vertices = tuple(vertices)
        if sorted(vertices) != sorted(graph.vertices) or len(set(vertices)) != len(vertices):
            raise ValueError("order must be a permutation of the graph's vertices")
        self.graph = graph
        self.vertices = vertices
        self.rank = {v: i for i, v in enumerate(vertices)}

    def __eq__(self, other):
        return isinstance(other, VertexOrder) and self.graph == other.graph and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "VertexOrder(" + " < ".join(self.vertices) + ")"

    def less(self, u: str, v: str) -> bool:
        return self.rank[u] < self.rank[v]

    def minimum(self, vertices: Iterable[str]) -> str:
        return min(vertices, key=self.rank.__getitem__)

    def maximum(self, vertices: Iterable[str]) -> str:
        return max(vertices, key=self.rank.__getitem__)

    def with_first(self, *first: str) -> "VertexOrder":
        """Move ``first`` to the front, keeping the rest in their current order."""
        rest = [v for v in self.vertices if v not in first]
        return VertexOrder(self.graph, list(first) + rest)


def parse_graph(text: str | bytes) -> DefiningGraph:
    """Parse the two-line ``vertices:`` / ``edges:`` graph format.

    ``#`` starts a comment.  Blank lines are ignored.  The ``edges:`` line may
    be omitted or empty for an edgeless graph.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    vertices: list[str] | None = None
    edges: list[tuple[str, str]] = []
    edge_lines: list[int] = []
    seen_edges = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("vertices", "edges"):
            raise GraphFormatError(f"malformed line {raw!r}", lineno)
        if key == "vertices":
            if vertices is not None:
                raise GraphFormatError("second 'vertices:' line", lineno)
            vertices = []
            for name in rest.split():
                if not _NAME.match(name):
                    raise GraphFormatError(f"invalid vertex name {name!r}", lineno)
                if name in vertices:
                    raise GraphFormatError(f"duplicate vertex {name!r}", lineno)
                vertices.append(name)
        else:
            if seen_edges:
                raise GraphFormatError("second 'edges:' line", lineno)
            seen_edges = True
            for token in rest.split():
                a, dash, b = token.partition("-")
                if not dash or not _NAME.match(a) or not _NAME.match(b):
                    raise GraphFormatError(f"malformed edge {token!r}", lineno)
                edges.append((a, b))
                edge_lines.append(lineno)
    if vertices is None:
        raise GraphFormatError("missing 'vertices:' line")
    known = set(vertices)
    seen: set[frozenset[str]] = set()
    for (a, b), lineno in zip(edges, edge_lines):
        if a == b:
            raise GraphFormatError(f"loop edge {a}-{b}", lineno)
        for x in (a, b):
            if x not in known:
                raise GraphFormatError(f"unknown endpoint {x!r}", lineno)
        if frozenset((a, b)) in seen:
            raise GraphFormatError(f"repeated edge {a}-{b}", lineno)
        seen.add(frozenset((a, b)))
    return DefiningGraph(vertices, edges)


def serialize_graph(graph: DefiningGraph) -> str:
    rank = {v: i for i, v in enumerate(graph.vertices)}
    pairs = sorted((tuple(sorted(e, key=rank.__getitem__)) for e in graph.edges),
                   key=lambda p: (rank[p[0]], rank[p[1]]))
    return ("vertices: " + " ".join(graph.vertices) + "\n"
            + "edges: " + " ".join(f"{a}-{b}" for a, b in pairs) + "\n")


def path_graph(n: int, prefix: str = "v") -> DefiningGraph:
    """Path on ``prefix1 .. prefixn``; ``path_graph(5)`` is the P5 of the examples."""
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return DefiningGraph(names, zip(names, names[1:]))


def complete_graph(n: int, prefix: str = "v") -> DefiningGraph:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return DefiningGraph(names, [(a, b) for i, a in enumerate(names) for b in names[i + 1:]])
