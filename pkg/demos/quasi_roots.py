"""
Quasi-roots and when they are unique
====================================

A quasi-root of ``h`` is an element ``g`` with a geodesic decomposition
``h = a g^n b`` in which ``n`` is large and the sides ``a``, ``b`` are short
relative to ``h``.  For strongly non-split primitive roots and large enough
``n`` the root is unique up to conjugacy.
"""

# %%
# Without strong non-splitness uniqueness fails.  On the path graph ``v5``
# commutes with ``v2`` and ``v3``, so its letters can be pushed to either end.
from raag import (
    GroupElement,
    QuasiRootParams,
    are_conjugate_cyclically_reduced,
    find_quasi_roots,
    path_graph,
)

P5 = path_graph(5)
h = GroupElement(P5, "v2^3 v3^3 v5") ** 5
found = find_quasi_roots(QuasiRootParams("1/7", 2), h)
print(len(found), "decompositions with", len({d.g for d in found}), "distinct roots")
g1, g2 = GroupElement(P5, "v2^3 v3^3 v5"), GroupElement(P5, "v2^3 v3^3")
print("conjugate?", are_conjugate_cyclically_reduced(g1, g2))

# %%
# The side bound must stay below one half.  At exactly one half the
# element ``v1^5 v2^5`` has the two non-conjugate quasi-roots ``v1`` and ``v2``.
from raag import DefiningGraph

edge = DefiningGraph(["v1", "v2"], [("v1", "v2")])
h2 = GroupElement(edge, "v1^5 v2^5")
for d in find_quasi_roots(QuasiRootParams("1/2", 2, diagnostic=True), h2):
    if d.n == 5:
        print(f"h = ({d.a}) ({d.g})^{d.n} ({d.b})")

# %%
# A planted instance that meets every hypothesis.  All strongly non-split
# primitive quasi-roots found agree up to the predicted conjugations.
from raag import check_all_pairs, generate_instance

inst = generate_instance(seed=13, extra_power=3)
print("graph:", inst.graph)
print(f"lambda = {inst.params.lambda_str}, N = {inst.params.N}, |h| = {len(inst.h)}")
found = find_quasi_roots(inst.params, inst.h)
reports = check_all_pairs(inst.params, found)
p = inst.planted
print(f"planted root g = {p.g}, n = {p.n}, |a| = {len(p.a)}, |b| = {len(p.b)}")
print(len(found), "decompositions,", len(reports), "checked,",
      "all conclusions hold:", all(r.conclusions_hold for r in reports))
