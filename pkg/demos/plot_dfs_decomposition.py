"""
Decomposing a path-free graph
=============================

A depth-first search on a graph with no path on ``n+1`` vertices never
holds more than ``n`` vertices on its stack. Cutting the finish order into
runs of ``n`` gives groups ``(S, T)`` that account for every edge, which
turns into an upper bound on how many edges such a subgraph can keep.
"""

from pathfree.decomp import (StackOverflowWitness, certified_upper_bound, decomposition_verify,
                             dfs_decompose)
from pathfree.graph import block_union, gnp

h = block_union(300, 12, 0.6, seed=1)
d = dfs_decompose(h, 12)
print(len(d.groups), "groups, verified:", decomposition_verify(d, h))

# %%
# A long path makes the stack overflow, and the stack itself is the witness.
try:
    dfs_decompose(gnp(300, 0.05, 2), 12)
except StackOverflowWitness as exc:
    print("found a path on", len(exc.path), "vertices")

# %%
g = gnp(1000, 0.05, 3)
print("no 21-vertex-path-free subgraph has more than", certified_upper_bound(g, 20), "edges")
