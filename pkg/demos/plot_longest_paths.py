"""
Finding long paths
==================

Exact longest paths come from a subset dynamic program per component.
Detection of a path on ``k`` vertices short-circuits on component sizes,
falls back to the exact search on small components and to color coding
on large ones, and always returns a checkable witness when it says yes.
"""

from pathfree.graph import block_union, gnp
from pathfree.paths import DetectionBudget, check_witness, has_path, longest_path_exact

g = gnp(16, 0.25, seed=3)
print("longest path has", longest_path_exact(g), "vertices")

# %%
for k in (4, 8, 12, 16):
    v = has_path(g, k, DetectionBudget(seed=1))
    print(k, v.contains.name, v.certificate.name, "witness ok:", check_witness(g, v, k))

# %%
# A union of cliques on 10 vertices is certified free of 11-vertex paths
# without any search.
h = block_union(5000, 10, 1.0, seed=0)
print(has_path(h, 11).certificate.name)
