"""Hypothesis strategies: seeded random graphs and elements."""

import random

from hypothesis import strategies as st

from raag import Letter
from raag.sampling import random_connected_graph, random_element


@st.composite
def graph_and_element(draw, min_vertices=2, max_vertices=6, max_length=8):
    rng = random.Random(draw(st.integers(0, 2**32)))
    graph = random_connected_graph(rng, draw(st.integers(min_vertices, max_vertices)))
    return graph, random_element(rng, graph, draw(st.integers(0, max_length)))


@st.composite
def graph_and_raw_word(draw, max_vertices=6, max_length=12):
    rng = random.Random(draw(st.integers(0, 2**32)))
    graph = random_connected_graph(rng, draw(st.integers(2, max_vertices)))
    k = draw(st.integers(0, max_length))
    return graph, [Letter(rng.choice(graph.vertices), rng.choice((1, -1))) for _ in range(k)]


seeds = st.integers(0, 2**32)


def geodesic_factor(rng, graph, length, left=None, right=None, tries=200):
    """A random element ``x`` of the given length with ``left * x * right`` geodesic."""
    from raag import is_geodesic
    for _ in range(tries):
        x = random_element(rng, graph, length)
        parts = [p for p in (left, x, right) if p is not None]
        if is_geodesic(parts):
            return x
    return None


def sample_sd_conical_root(rng, max_vertices=6, max_length=6):
    """``(graph, order, p)`` with ``p`` strongly non-split, cyclically reduced and SD-conical.

    A strongly non-split cyclically reduced element is drawn first, then
    replaced by its conical conjugate at a random support vertex, which is
    put first in a random order (so the apex condition is vacuous).
    """
    from raag import conical_conjugate, is_cyclically_reduced, is_strongly_non_split
    from raag.sampling import random_order
    while True:
        graph = random_connected_graph(rng, rng.randint(2, max_vertices))
        for _ in range(50):
            g = random_element(rng, graph, rng.randint(1, max_length))
            if is_cyclically_reduced(g) and is_strongly_non_split(g):
                v0 = rng.choice(sorted(g.support))
                order = random_order(rng, graph).with_first(v0)
                return graph, order, conical_conjugate(g, v0).p
