"""
Colorings without long monochromatic paths
==========================================

An affine plane of order ``q`` splits the pairs of ``q^2`` points into
``q+1`` parallel classes of lines. Blowing each point up into a set of
vertices gives a coloring of the complete graph where every color class
is a union of small cliques.
"""

from pathfree.coloring import affine_coloring, affine_plane, c_estimate, coloring_verify
from pathfree.coloring import plane_axioms_hold, random_coloring
from pathfree.graph import Graph, component_sizes, gnp

for q in (2, 3, 4, 5, 7, 8, 9):
    print(q, plane_axioms_hold(affine_plane(q)))

# %%
col = affine_coloring(75, 15, seed=0)
print(col.k, "colors, verified:", coloring_verify(Graph.complete(75), col, 15).passed)

# %%
# In a sparse host, random colors already leave only small components.
g = gnp(10_000, 3e-4, 1)
rc = random_coloring(g, 6, 1)
print("largest class component:", max(component_sizes(rc.class_graph(c)).max() for c in range(1, 7)))

# %%
est = c_estimate(gnp(60, 0.3, 2), 6, trials=2, seed=2)
print("colors needed in", (est.lower, est.upper))
