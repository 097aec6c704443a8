"""
Normal forms on the path graph
==============================

Words in a right-angled Artin group, read with the convention that two
vertices commute exactly when they are *not* joined by an edge.
"""

# %%
# The path graph on five vertices. ``v1`` and ``v3`` commute, ``v2`` and
# ``v3`` do not.
from raag import GroupElement, path_graph

P5 = path_graph(5)
print(P5.commutes("v1", "v3"), P5.commutes("v2", "v3"))

# %%
# An element is stored through its normal form, so equal elements compare
# equal whatever word they were typed as.
from raag import normal_form, format_word, starting_generators

g = GroupElement(P5, "v2 v4^-1 v3^-1 v5")
print(g == GroupElement(P5, "v4^-1 v5 v2 v3^-1"))
print("normal form:", format_word(normal_form(g)))
print("starting generators:", sorted(starting_generators(g)))

# %%
# Changing the vertex order changes the normal form but not the element.
order = P5.order(["v5", "v4", "v3", "v2", "v1"])
print("reversed order:", format_word(normal_form(g, order)))

# %%
# Conical elements have exactly one starting generator.  Pyramidal asks the
# apex to be the smallest vertex of the support; SD-conical asks it to be
# adjacent to every smaller vertex of the graph.
from raag import is_conical, is_pyramidal, is_sd_conical

for word in ("v2 v3^-1 v4^-1 v5", "v4 v5", "v2 v1 v3 v4", "v2 v4^-1 v3^-1 v5"):
    x = GroupElement(P5, word)
    print(f"{word:22s} conical={is_conical(x)!s:5s} pyramidal={is_pyramidal(x)!s:5s} "
          f"sd-conical={is_sd_conical(x)}")

# %%
# A non-split cyclically reduced element can be conjugated to one that is
# conical at any vertex of its support.
from raag import conical_conjugate

r = conical_conjugate(g, "v2")
print(f"p = {r.p}, a = {r.a}, b = {r.b}, k = {r.k}")
print("invariants violated:", r.check(g))
