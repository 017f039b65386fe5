"""
Building large path-free subgraphs
==================================

Three lower-bound constructions, each returning a subgraph whose components
have at most ``n`` vertices (so it cannot contain a path on ``n+1``):

* cliques of a vertex partition intersected with the host,
* isolated edges of a very sparse host,
* repeated extraction of dense ``n``-sets by degree thresholding.
"""

import math

from pathfree.construct import (DenseExtractionParams, blocks_construct, isolated_edge_construct,
                                repeated_dense_construct)
from pathfree.decomp import certified_upper_bound
from pathfree.graph import GnpParams, HashedGnp, gnp

g = gnp(3000, 0.05, seed=0)
for partition in ("random", "dfs"):
    res = blocks_construct(g, 30, seed=0, partition=partition)
    print(partition, res.edge_count, "edges, largest component", res.max_component)
print("upper bound", certified_upper_bound(g, 30))

# %%
sparse = gnp(100_000, 1e-5, seed=1)
print("isolated edges:", isolated_edge_construct(sparse).edge_count, "(N/15 =", 100_000 // 15, ")")

# %%
# Sparser hosts call for the dense-set extraction. Here both constructions clear
# the (1/75)(w / log w) pnN target of about 2.9k edges comfortably.
N, n = 65536, 64
p = math.log(N / n) / (8 * n)
host = HashedGnp(GnpParams(N, p, 4))
built = repeated_dense_construct(host, n, DenseExtractionParams(n=n), seed=4)
print("dense sets:", built.edge_count, "edges over", built.rounds, "rounds")
print("random blocks:", blocks_construct(host, n, seed=4).edge_count)
