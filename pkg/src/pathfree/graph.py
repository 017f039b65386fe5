"""Immutable simple graphs, G(N, p) sampling and small graph utilities.

Vertices are the integers ``0..N-1``. :class:`Graph` stores adjacency in CSR
form (sorted neighbor arrays); :class:`HashedGnp` is a lazily evaluated
G(N, p) whose pair states are read from a counter stream, for instances far
too large to materialize.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

import numba
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from . import rng

# Below this p every pair gets its own draw; at and above it gaps are skipped.
DENSE_SAMPLING_P = 0.1
_CHUNK = 1 << 22


class EdgeListError(ValueError):
    pass


@dataclass(frozen=True)
class GnpParams:
    n_vertices: int
    edge_prob: float
    seed: int = 0

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError(f"N must be >= 1, got {self.n_vertices}")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.edge_prob}")


def pair_index(u, v):
    """Colex rank of the pair {u, v}: ``max*(max-1)/2 + min``."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    return hi * (hi - 1) // 2 + lo


def pair_unrank(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    idx = np.asarray(idx, dtype=np.int64)
    hi = ((1.0 + np.sqrt(1.0 + 8.0 * idx.astype(np.float64))) / 2.0).astype(np.int64)
    # float sqrt can be off by one near perfect squares
    hi -= (hi * (hi - 1) // 2 > idx).astype(np.int64)
    hi += ((hi + 1) * hi // 2 <= idx).astype(np.int64)
    lo = idx - hi * (hi - 1) // 2
    return lo, hi


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on ``0..vertex_count-1`` in CSR form."""

    vertex_count: int
    indptr: np.ndarray
    indices: np.ndarray
    params: GnpParams | None = field(default=None, compare=False)

    @classmethod
    def from_edges(cls, vertex_count: int, edges, params: GnpParams | None = None,
                   check: bool = True) -> "Graph":
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if check and len(e):
            if e.min() < 0 or e.max() >= vertex_count:
                raise ValueError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("self-loop in edge list")
            codes = np.sort(pair_index(e[:, 0], e[:, 1]))
            if np.any(codes[1:] == codes[:-1]):
                raise ValueError("duplicate edge in edge list")
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order]
        indptr = np.zeros(vertex_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=vertex_count), out=indptr[1:])
        indptr.flags.writeable = False
        indices.flags.writeable = False
        return cls(vertex_count, indptr, indices, params)

    @classmethod
    def empty(cls, vertex_count: int) -> "Graph":
        return cls.from_edges(vertex_count, np.empty((0, 2), dtype=np.int64))

    @classmethod
    def complete(cls, vertex_count: int) -> "Graph":
        u, v = np.triu_indices(vertex_count, 1)
        return cls.from_edges(vertex_count, np.column_stack([u, v]), check=False)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.diff(self.indptr)
        d.flags.writeable = False
        return d

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def edges(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self.vertex_count, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def masks(self) -> list[int]:
        """Adjacency as Python-int bit sets, one per vertex."""
        out = []
        for v in range(self.vertex_count):
            m = 0
            for w in self.neighbors(v).tolist():
                m |= 1 << w
            out.append(m)
        return out

    def _rows(self, vertices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(owner, neighbor) for every adjacency entry of ``vertices``."""
        vertices = np.asarray(vertices, dtype=np.int64)
        starts = self.indptr[vertices]
        lens = self.indptr[vertices + 1] - starts
        owner = np.repeat(vertices, lens)
        offs = np.arange(lens.sum()) - np.repeat(np.cumsum(lens) - lens, lens)
        return owner, self.indices[np.repeat(starts, lens) + offs]

    def count_into(self, candidates, part) -> np.ndarray:
        """For each candidate v, the number of neighbors of v inside ``part``."""
        _, nbrs = self._rows(part)
        counts = np.bincount(nbrs, minlength=self.vertex_count)
        return counts[np.asarray(candidates, dtype=np.int64)]

    def induced_edges(self, vertices) -> np.ndarray:
        vertices = np.asarray(vertices, dtype=np.int64)
        inside = np.zeros(self.vertex_count, dtype=bool)
        inside[vertices] = True
        owner, nbrs = self._rows(vertices)
        keep = inside[nbrs] & (owner < nbrs)
        return np.column_stack([owner[keep], nbrs[keep]])

    def csr(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        n = self.vertex_count
        return csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def __repr__(self) -> str:
        return f"Graph(N={self.vertex_count}, M={self.edge_count})"


class HashedGnp:
    """G(N, p) evaluated on demand.

    Pair {u, v} is an edge iff the uniform at its colex rank in the EDGES
    stream of ``params.seed`` is below p. This is the same rule the dense
    sampler applies, so for p >= 0.1 ``materialize()`` equals
    ``gnp_generate(params)``.
    """

    def __init__(self, params: GnpParams):
        self.params = params
        self.vertex_count = params.n_vertices
        self.p = params.edge_prob
        self._key = rng.stream_key(params.seed, rng.EDGES)

    def has_edges(self, us, vs) -> np.ndarray:
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        hit = rng.counter_uniform(self._key, pair_index(us, vs)) < self.p
        return hit & (us != vs)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.has_edges([u], [v])[0])

    def count_into(self, candidates, part) -> np.ndarray:
        c = np.asarray(candidates, dtype=np.int64)
        a = np.asarray(part, dtype=np.int64)
        if len(c) == 0:
            return np.zeros(0, dtype=np.int64)
        grid = self.has_edges(c[:, None], a[None, :])
        return grid.sum(axis=1)

    def induced_edges(self, vertices) -> np.ndarray:
        vertices = np.asarray(vertices, dtype=np.int64)
        i, j = np.triu_indices(len(vertices), 1)
        u, v = vertices[i], vertices[j]
        keep = self.has_edges(u, v)
        lo = np.minimum(u[keep], v[keep])
        hi = np.maximum(u[keep], v[keep])
        return np.column_stack([lo, hi])

    def materialize(self) -> Graph:
        return _dense_sample(self.params)

    def __repr__(self) -> str:
        return f"HashedGnp(N={self.vertex_count}, p={self.p})"


def _dense_sample(params: GnpParams) -> Graph:
    n, p = params.n_vertices, params.edge_prob
    total = n * (n - 1) // 2
    key = rng.stream_key(params.seed, rng.EDGES)
    kept = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        kept.append(idx[rng.counter_uniform(key, idx) < p])
    idx = np.concatenate(kept) if kept else np.empty(0, dtype=np.int64)
    lo, hi = pair_unrank(idx)
    return Graph.from_edges(n, np.column_stack([lo, hi]), params, check=False)


def _skip_sample(params: GnpParams) -> Graph:
    n, p = params.n_vertices, params.edge_prob
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph.from_edges(n, np.empty((0, 2), dtype=np.int64), params, check=False)
    key = rng.stream_key(params.seed, rng.SKIP)
    log_q = math.log1p(-p)
    batch = int(p * total * 1.05) + 64
    pos, drawn, kept = -1, 0, []
    while True:
        u = 1.0 - rng.counter_uniform(key, np.arange(drawn, drawn + batch, dtype=np.int64))
        # gaps past the end are clipped before the cast (tiny p overflows int64)
        with np.errstate(over="ignore"):
            steps = np.minimum(np.floor(np.log(u) / log_q) + 1, total + 1).astype(np.int64)
        positions = pos + np.cumsum(steps)
        inside = positions < total
        kept.append(positions[inside])
        if not inside.all():
            break
        pos = int(positions[-1])
        drawn += batch
        batch = max(64, int(p * (total - pos) * 1.05) + 64)
    lo, hi = pair_unrank(np.concatenate(kept))
    return Graph.from_edges(n, np.column_stack([lo, hi]), params, check=False)


def gnp_generate(params: GnpParams) -> Graph:
    """Sample G(N, p), a pure function of (N, p, seed).

    For p >= 0.1 each of the C(N, 2) pairs gets one draw from the counter
    stream (O(N^2)); below that, geometric gaps between consecutive edges in
    colex pair order are drawn instead (O(pN^2) expected).
    """
    if params.edge_prob >= DENSE_SAMPLING_P:
        return _dense_sample(params)
    return _skip_sample(params)


def gnp(n_vertices: int, edge_prob: float, seed: int = 0) -> Graph:
    return gnp_generate(GnpParams(n_vertices, edge_prob, seed))


def block_union(n_vertices: int, block: int, q: float, seed: int = 0) -> Graph:
    """Disjoint union of G(b, q) on a random partition into blocks of size <= ``block``.

    Every component has at most ``block`` vertices, so the result is
    P_{block+1}-free.
    """
    gen = rng.generator(seed, rng.BLOCKS)
    perm = gen.permutation(n_vertices)
    parts = []
    full = n_vertices // block
    if full:
        iu, iv = np.triu_indices(block, 1)
        base = (np.arange(full) * block)[:, None]
        u = perm[base + iu].ravel()
        v = perm[base + iv].ravel()
        keep = gen.random(len(u)) < q
        parts.append(np.column_stack([u[keep], v[keep]]))
    rest = n_vertices - full * block
    if rest > 1:
        iu, iv = np.triu_indices(rest, 1)
        u, v = perm[full * block + iu], perm[full * block + iv]
        keep = gen.random(len(u)) < q
        parts.append(np.column_stack([u[keep], v[keep]]))
    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n_vertices, edges, check=False)


def from_edge_list(n_vertices: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n_vertices, np.array(list(pairs), dtype=np.int64).reshape(-1, 2))


def path_graph(k: int) -> Graph:
    return from_edge_list(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    return from_edge_list(k, [(i, (i + 1) % k) for i in range(k)])


def disjoint_union(*graphs: Graph) -> Graph:
    offset, edges = 0, []
    for g in graphs:
        edges.append(g.edges() + offset)
        offset += g.vertex_count
    return Graph.from_edges(offset, np.concatenate(edges) if edges else np.empty((0, 2)))


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Subgraph on ``vertices``, relabeled so vertex i is ``vertices[i]``.

    Returns the graph and the relabeling map (new label -> old label).
    """
    vertices = np.asarray(list(vertices) if not isinstance(vertices, np.ndarray) else vertices,
                          dtype=np.int64)
    if len(vertices) and (vertices.min() < 0 or vertices.max() >= g.vertex_count):
        raise IndexError(f"vertex index out of range for graph on {g.vertex_count} vertices")
    if len(np.unique(vertices)) != len(vertices):
        raise ValueError("duplicate vertex in induced_subgraph")
    relabel = np.full(g.vertex_count, -1, dtype=np.int64)
    relabel[vertices] = np.arange(len(vertices))
    e = g.induced_edges(vertices)
    return Graph.from_edges(len(vertices), relabel[e], check=False), vertices


def subgraph_from_edges(g: Graph, edges) -> Graph:
    return Graph.from_edges(g.vertex_count, edges, params=None, check=False)


def component_labels(g: Graph) -> tuple[int, np.ndarray]:
    if g.vertex_count == 0:
        return 0, np.empty(0, dtype=np.int64)
    return _cc(g.csr(), directed=False)


def component_sizes(g: Graph) -> np.ndarray:
    count, labels = component_labels(g)
    return np.bincount(labels, minlength=count)


def largest_component_size(g: Graph) -> int:
    sizes = component_sizes(g)
    return int(sizes.max()) if len(sizes) else 0


def connected_components(g: Graph) -> list[np.ndarray]:
    """Vertex sets of the components, ordered by smallest member."""
    count, labels = component_labels(g)
    order = np.argsort(labels, kind="stable")
    splits = np.cumsum(np.bincount(labels, minlength=count))[:-1]
    comps = np.split(order, splits)
    comps.sort(key=lambda c: int(c[0]))
    return comps


def isolated_edge_count(g: Graph) -> int:
    """Edges whose endpoints both have degree exactly one."""
    e = g.edges()
    d = g.degrees
    return int(np.count_nonzero((d[e[:, 0]] == 1) & (d[e[:, 1]] == 1)))


class DfsForest(NamedTuple):
    order: np.ndarray    # vertices by discovery time
    parent: np.ndarray   # -1 for roots
    depth: np.ndarray    # stack size right after the vertex was pushed
    witness: np.ndarray  # stack + offending vertex when the limit was hit, else empty


@numba.njit(cache=True)
def _dfs_kernel(indptr, indices, limit):
    nv = indptr.shape[0] - 1
    order = np.empty(nv, np.int64)
    parent = np.full(nv, -1, np.int64)
    depth = np.zeros(nv, np.int64)
    ptr = indptr[:-1].copy()
    seen = np.zeros(nv, np.bool_)
    stack = np.empty(limit + 1, np.int64)
    t = 0
    for root in range(nv):
        if seen[root]:
            continue
        seen[root] = True
        order[t] = root
        t += 1
        depth[root] = 1
        stack[0] = root
        top = 1
        while top > 0:
            u = stack[top - 1]
            if ptr[u] < indptr[u + 1]:
                w = indices[ptr[u]]
                ptr[u] += 1
                if not seen[w]:
                    if top == limit:
                        wit = np.empty(top + 1, np.int64)
                        wit[:top] = stack[:top]
                        wit[top] = w
                        return order[:t], parent, depth, wit
                    seen[w] = True
                    parent[w] = u
                    depth[w] = top + 1
                    order[t] = w
                    t += 1
                    stack[top] = w
                    top += 1
            else:
                top -= 1
    return order, parent, depth, np.empty(0, np.int64)


def dfs_forest(g: Graph, limit: int | None = None) -> DfsForest:
    """Depth-first search over all components.

    Roots are taken in ascending order and neighbors are scanned in ascending
    order. If ``limit`` is given and a push would make the stack hold
    ``limit + 1`` vertices, the search stops and ``witness`` holds those
    vertices, which form a path in ``g`` (the stack is always a path).
    """
    lim = g.vertex_count if limit is None else int(limit)
    if lim < 1:
        raise ValueError("limit must be >= 1")
    if g.vertex_count == 0:
        z = np.empty(0, dtype=np.int64)
        return DfsForest(z, z, z, z)
    return DfsForest(*_dfs_kernel(g.indptr, g.indices, lim))


def is_path_in(g, path) -> bool:
    """True iff ``path`` is a sequence of distinct vertices joined consecutively in ``g``."""
    path = [int(v) for v in path]
    if len(set(path)) != len(path):
        return False
    if any(v < 0 or v >= g.vertex_count for v in path):
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def write_edge_list(g: Graph, target) -> None:
    """Write ``N M`` followed by one ``u v`` line per edge (u < v)."""
    e = g.edges()
    buf = io.StringIO()
    buf.write(f"{g.vertex_count} {len(e)}\n")
    for u, v in e.tolist():
        buf.write(f"{u} {v}\n")
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w") as fh:
            fh.write(buf.getvalue())
    else:
        target.write(buf.getvalue())


def read_edge_list(source) -> Graph:
    if isinstance(source, (str, os.PathLike)):
        with open(source) as fh:
            text = fh.read()
    else:
        text = source.read()
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise EdgeListError("missing 'N M' header")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        pairs = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise EdgeListError(f"malformed edge list: {exc}") from None
    if len(pairs) != m:
        raise EdgeListError(f"header says {m} edges, found {len(pairs)}")
    seen = set()
    for lineno, (a, b) in enumerate(pairs, start=2):
        if a == b:
            raise EdgeListError(f"line {lineno}: self-loop at {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise EdgeListError(f"line {lineno}: vertex out of range 0..{n - 1}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise EdgeListError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
    return Graph.from_edges(n, np.array(pairs, dtype=np.int64).reshape(-1, 2), check=False)
