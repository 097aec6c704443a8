"""Seeded random graphs and elements for property tests and instance generation."""

from __future__ import annotations

import random

from .graph import DefiningGraph
from .words import GroupElement, Letter, _pile

__all__ = ["random_connected_graph", "random_element", "random_graph", "random_order"]


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> DefiningGraph:
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = [(a, b) for i, a in enumerate(names) for b in names[i + 1:] if rng.random() < p]
    return DefiningGraph(names, edges)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.3) -> DefiningGraph:
    """A random spanning tree plus each remaining pair with probability ``p``."""
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add(frozenset((names[i], names[j])))
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if rng.random() < p:
                edges.add(frozenset((a, b)))
    return DefiningGraph(names, edges)


def random_element(rng: random.Random, graph: DefiningGraph, length: int,
                   vertices=None) -> GroupElement:
    """A uniformly built random element of exactly ``length`` letters."""
    vertices = list(vertices or graph.vertices)
    out: list = []
    while len(out) < length:
        out = _pile(graph.adjacency, [Letter(rng.choice(vertices), rng.choice((1, -1)))], out)
    return GroupElement._from_reduced(graph, out)


def random_order(rng: random.Random, graph: DefiningGraph):
    vs = list(graph.vertices)
    rng.shuffle(vs)
    return graph.order(vs)
