"""
Sampling random graphs reproducibly
===================================

Every graph here is a pure function of ``(N, p, seed)``. Small graphs are
materialized in CSR form; huge ones stay lazy and answer adjacency queries
by hashing the pair index.
"""

from pathfree.graph import GnpParams, HashedGnp, gnp

# %%
# Same seed, same graph.
a, b = gnp(2000, 0.01, seed=42), gnp(2000, 0.01, seed=42)
print("edges:", a.edge_count, "identical:", (a.edges() == b.edges()).all())

# %%
# The expected edge count is p * N(N-1)/2.
print("expected:", 0.01 * 2000 * 1999 / 2)

# %%
# A lazy graph on a million vertices costs nothing until queried.
import numpy as np

lazy = HashedGnp(GnpParams(1_000_000, 1e-3, 7))
print("vertex 0 has", int(lazy.count_into(np.array([0]), np.arange(1, 1_000_000))[0]), "neighbours")
print("edge (3, 5) present:", lazy.has_edge(3, 5))
