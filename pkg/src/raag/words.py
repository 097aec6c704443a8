"""Letters, words and group elements of G(Gamma).

Words are tuples of :class:`Letter`.  A :class:`GroupElement` always stores
its CGW normal form under the graph's default vertex order, so two elements
are equal exactly when their stored words coincide.
"""

from __future__ import annotations

import heapq
import re
from typing import Iterable, NamedTuple, Sequence

from .graph import DefiningGraph

__all__ = [
    "CapExceeded",
    "DEFAULT_CAP",
    "DependenceDag",
    "GroupElement",
    "Letter",
    "dependence_dag",
    "disjointly_commute",
    "element",
    "enumerate_geodesic_prefixes",
    "equal",
    "find_innermost_cancellation",
    "format_word",
    "identity",
    "inverse",
    "is_geodesic",
    "parse_word",
    "reduce",
]

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """An enumeration visited more states than its cap allows."""


class Letter(NamedTuple):
    vertex: str
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.vertex, -self.sign)

    def __str__(self):
        return self.vertex if self.sign > 0 else f"{self.vertex}^-1"


Word = tuple  # tuple[Letter, ...]

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^\{?(-?\d+)\}?)?\Z")


def parse_word(text: str, graph: DefiningGraph | None = None) -> Word:
    """Parse whitespace separated tokens such as ``v2 v3^-1 v5^-2``.

    An exponent ``^k`` expands to ``|k|`` copies of the letter.
    """
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"malformed letter {token!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if exp == 0:
            raise ValueError(f"zero exponent in {token!r}")
        if graph is not None and name not in graph:
            raise KeyError(f"unknown vertex {name!r}")
        sign = 1 if exp > 0 else -1
        letters.extend([Letter(name, sign)] * abs(exp))
    return tuple(letters)


def format_word(word: Iterable, compact: bool = False) -> str:
    """Space separated letters; ``compact`` writes runs as powers (``v2^3``)."""
    letters = [Letter(*x) for x in word]
    if not compact:
        return " ".join(map(str, letters))
    out = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        k = (j - i) * letters[i].sign
        out.append(letters[i].vertex if k == 1 else f"{letters[i].vertex}^{k}")
        i = j
    return " ".join(out)


def _as_word(graph: DefiningGraph, word) -> Word:
    if isinstance(word, str):
        return parse_word(word, graph)
    out = tuple(Letter(*x) for x in word)
    for x in out:
        if x.vertex not in graph:
            raise KeyError(f"unknown vertex {x.vertex!r}")
        if x.sign not in (1, -1):
            raise ValueError(f"bad sign in {x!r}")
    return out


def inverse(word: Sequence) -> Word:
    return tuple(Letter(v, -s) for v, s in reversed(word))


def find_innermost_cancellation(graph: DefiningGraph, word: Sequence) -> tuple[int, int] | None:
    """Leftmost (then shortest) innermost cancellation ``(i, j)``, or None.

    ``word[i]`` and ``word[j]`` are mutually inverse letters of one vertex and
    every letter strictly between them commutes with that vertex.
    """
    adj = graph.adjacency
    n = len(word)
    for i in range(n):
        v, s = word[i]
        nbrs = adj[v]
        for j in range(i + 1, n):
            u, t = word[j]
            if u == v:
                if t == -s:
                    return i, j
                break
            if u in nbrs:
                break
    return None


def reduce(graph: DefiningGraph, word: Sequence) -> Word:
    """Delete innermost cancellations, leftmost first, until none is left."""
    w = list(_as_word(graph, word))
    while True:
        pair = find_innermost_cancellation(graph, w)
        if pair is None:
            return tuple(w)
        i, j = pair
        del w[j]
        del w[i]


def _pile(adjacency, letters: Iterable, base: Sequence = ()) -> list:
    # Appends letters one at a time to an already reduced word.  A new letter
    # either cancels against the last occurrence of its vertex (when nothing
    # in between blocks it) or is appended.
    out = list(base)
    for letter in letters:
        v, s = letter
        nbrs = adjacency[v]
        for i in range(len(out) - 1, -1, -1):
            u, t = out[i]
            if u == v:
                if t == -s:
                    del out[i]
                    break
                out.append(letter)
                break
            if u in nbrs:
                out.append(letter)
                break
        else:
            out.append(letter)
    return out


def _normal_word(adjacency, word: Sequence, rank) -> Word:
    # Topological sort of the dependence DAG that always emits the available
    # letter whose vertex is largest under ``rank``.  ``word`` must be reduced.
    n = len(word)
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    last: dict[str, int] = {}
    for j, (v, _) in enumerate(word):
        i = last.get(v)
        if i is not None:
            succ[i].append(j)
            indeg[j] += 1
        for u in adjacency[v]:
            i = last.get(u)
            if i is not None:
                succ[i].append(j)
                indeg[j] += 1
        last[v] = j
    heap = [(-rank[word[j][0]], j) for j in range(n) if not indeg[j]]
    heapq.heapify(heap)
    out = []
    while heap:
        _, i = heapq.heappop(heap)
        out.append(word[i])
        for j in succ[i]:
            indeg[j] -= 1
            if not indeg[j]:
                heapq.heappush(heap, (-rank[word[j][0]], j))
    return tuple(Letter(*x) for x in out)


class GroupElement:
    """An element of G(Gamma), stored as its default-order normal form."""

    __slots__ = ("graph", "word", "_hash")

    def __init__(self, graph: DefiningGraph, word=()):
        word = _as_word(graph, word)
        reduced = _pile(graph.adjacency, word)
        self.graph = graph
        self.word = _normal_word(graph.adjacency, reduced, graph.rank)
        self._hash = None

    @classmethod
    def _from_reduced(cls, graph: DefiningGraph, reduced: Sequence) -> "GroupElement":
        g = object.__new__(cls)
        g.graph = graph
        g.word = _normal_word(graph.adjacency, reduced, graph.rank)
        g._hash = None
        return g

    def _same_graph(self, other: "GroupElement"):
        if self.graph is not other.graph and self.graph != other.graph:
            raise ValueError("elements belong to different graphs")

    def __len__(self):
        return len(self.word)

    def __bool__(self):
        return bool(self.word)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.word)

    def inverse(self) -> "GroupElement":
        return GroupElement._from_reduced(self.graph, inverse(self.word))

    def __invert__(self):
        return self.inverse()

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._same_graph(other)
        return GroupElement._from_reduced(self.graph, _pile(self.graph.adjacency, other.word, self.word))

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        reduced = _pile(self.graph.adjacency, self.word * n)
        return GroupElement._from_reduced(self.graph, reduced)

    def conjugate(self, by: "GroupElement") -> "GroupElement":
        """``by * self * by^-1``."""
        return by * self * by.inverse()

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.word == other.word and (self.graph is other.graph or self.graph == other.graph)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.word)
        return self._hash

    def sort_key(self) -> tuple:
        rank = self.graph.rank
        return (len(self.word), tuple((rank[v], s) for v, s in self.word))

    def __str__(self):
        return format_word(self.word, compact=True)

    def __repr__(self):
        return f"GroupElement({str(self)!r})"


def element(graph: DefiningGraph, word=()) -> GroupElement:
    return GroupElement(graph, word)


def identity(graph: DefiningGraph) -> GroupElement:
    return GroupElement(graph, ())


def equal(g1: GroupElement, g2: GroupElement, check: bool = False) -> bool:
    """Element equality.

    With ``check=True`` the normal-form comparison is cross-checked against
    innermost-cancellation reduction of ``g1 * g2^-1`` and a disagreement
    raises ``AssertionError``.
    """
    g1._same_graph(g2)
    same = g1.word == g2.word
    if check:
        other = not reduce(g1.graph, g1.word + inverse(g2.word))
        if other != same:
            raise AssertionError(f"equality oracles disagree on {g1} vs {g2}")
    return same


def disjointly_commute(g1: GroupElement, g2: GroupElement) -> bool:
    g1._same_graph(g2)
    s1, s2 = g1.support, g2.support
    if s1 & s2:
        return False
    adj = g1.graph.adjacency
    return all(not (adj[u] & s2) for u in s1)


def is_geodesic(parts: Sequence[GroupElement]) -> bool:
    """True iff the lengths of ``parts`` add up to the length of their product."""
    parts = list(parts)
    if not parts:
        return True
    graph = parts[0].graph
    total = 0
    out: list = []
    for p in parts:
        parts[0]._same_graph(p)
        total += len(p)
        out = _pile(graph.adjacency, p.word, out)
    return len(out) == total


class DependenceDag:
    """The dependence DAG ("heap") of a reduced word.

    Node ``i`` is the ``i``-th letter; there is an edge ``i -> j`` for ``i < j``
    whenever the two letters do not commute (letters of one vertex never
    commute).  Letters of a single vertex form a chain, so a downward-closed
    set is determined by how many occurrences of each vertex it contains: an
    *ideal* here is a tuple of per-vertex counts indexed like
    ``graph.vertices``.
    """

    def __init__(self, graph: DefiningGraph, word: Sequence):
        self.graph = graph
        self.word = tuple(word)
        self.vertex_index = {v: i for i, v in enumerate(graph.vertices)}
        nv = len(graph.vertices)
        self.occurrences: list[list[int]] = [[] for _ in range(nv)]
        self.chain_index: list[int] = []
        for pos, (v, _) in enumerate(self.word):
            vi = self.vertex_index[v]
            self.chain_index.append(len(self.occurrences[vi]))
            self.occurrences[vi].append(pos)
        # requirements[vi][k]: (ui, count) pairs that must hold before the
        # k-th (0-based) occurrence of vertex vi can be added.
        adj_idx = [[self.vertex_index[u] for u in graph.adjacency[v]] for v in graph.vertices]
        seen = [0] * nv
        self.requirements: list[list[tuple]] = [[] for _ in range(nv)]
        for v, _ in self.word:
            vi = self.vertex_index[v]
            self.requirements[vi].append(tuple((ui, seen[ui]) for ui in adj_idx[vi] if seen[ui]))
            seen[vi] += 1
        self.full = tuple(len(o) for o in self.occurrences)

    def __len__(self):
        return len(self.word)

    @property
    def edges(self) -> list[tuple[int, int]]:
        adj = self.graph.adjacency
        out = []
        for j, (v, _) in enumerate(self.word):
            for i in range(j):
                u = self.word[i][0]
                if u == v or u in adj[v]:
                    out.append((i, j))
        return out

    def is_ideal(self, counts: Sequence[int]) -> bool:
        for vi, c in enumerate(counts):
            if c < 0 or c > self.full[vi]:
                return False
            if c:
                for ui, req in self.requirements[vi][c - 1]:
                    if counts[ui] < req:
                        return False
        return True

    def addable(self, counts: Sequence[int]) -> list[int]:
        """Vertex indices whose next occurrence can be added to the ideal."""
        out = []
        for vi, c in enumerate(counts):
            if c < self.full[vi]:
                for ui, req in self.requirements[vi][c]:
                    if counts[ui] < req:
                        break
                else:
                    out.append(vi)
        return out

    def ideals(self, size: int, cap: int = DEFAULT_CAP) -> list[tuple]:
        """All ideals with ``size`` letters (breadth-first over sizes)."""
        if size < 0 or size > len(self.word):
            raise ValueError(f"size must lie in 0..{len(self.word)}")
        layer = {tuple([0] * len(self.full))}
        visited = 1
        for _ in range(size):
            nxt = set()
            for c in layer:
                for vi in self.addable(c):
                    lst = list(c)
                    lst[vi] += 1
                    nxt.add(tuple(lst))
            visited += len(nxt)
            if visited > cap:
                raise CapExceeded(f"more than {cap} prefix ideals visited")
            layer = nxt
        return sorted(layer)

    def all_ideals(self, cap: int = DEFAULT_CAP) -> list[tuple]:
        out = []
        layer = {tuple([0] * len(self.full))}
        while layer:
            out.extend(sorted(layer))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} prefix ideals visited")
            nxt = set()
            for c in layer:
                for vi in self.addable(c):
                    lst = list(c)
                    lst[vi] += 1
                    nxt.add(tuple(lst))
            layer = nxt
        return out

    def contains(self, counts: Sequence[int], pos: int) -> bool:
        vi = self.vertex_index[self.word[pos][0]]
        return self.chain_index[pos] < counts[vi]

    def segment(self, lower: Sequence[int], upper: Sequence[int]) -> Word:
        """Letters in ``upper`` but not ``lower``, in word order."""
        vi_of = self.vertex_index
        out = []
        for pos, letter in enumerate(self.word):
            k = self.chain_index[pos]
            vi = vi_of[letter[0]]
            if lower[vi] <= k < upper[vi]:
                out.append(letter)
        return tuple(out)

    def prefix(self, counts: Sequence[int]) -> Word:
        return self.segment([0] * len(self.full), counts)

    def suffix(self, counts: Sequence[int]) -> Word:
        return self.segment(counts, self.full)

    def upward_closure(self, pos: int) -> set[int]:
        adj = self.graph.adjacency
        closure = {pos}
        for j in range(pos + 1, len(self.word)):
            v = self.word[j][0]
            for i in closure:
                u = self.word[i][0]
                if u == v or u in adj[v]:
                    closure.add(j)
                    break
        return closure


def dependence_dag(g: GroupElement) -> DependenceDag:
    return DependenceDag(g.graph, g.word)


def enumerate_geodesic_prefixes(g: GroupElement, d: int, cap: int = DEFAULT_CAP) -> list[GroupElement]:
    """All ``u`` with ``|u| = d`` such that ``g = u * (u^-1 g)`` is geodesic.

    Returned sorted by :meth:`GroupElement.sort_key`.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    dag = dependence_dag(g)
    found = {GroupElement._from_reduced(g.graph, dag.prefix(c)) for c in dag.ideals(d, cap)}
    return sorted(found, key=GroupElement.sort_key)
