"""Edge decomposition of P_{n+1}-free graphs along a depth-first search.

A DFS in a P_{n+1}-free graph never holds more than n vertices on its stack.
Cutting the discovery order into consecutive groups S_1, S_2, ... of n
vertices and letting T_i be the stack just before the first vertex of S_i is
pushed, every edge joins its later-discovered endpoint in some S_i to a vertex
of S_i or T_i (an earlier endpoint outside S_i is an ancestor that is still on
the stack). Counting edges group by group then bounds e(H) by N/n times the
largest possible F_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, dfs_forest


class StackOverflowWitness(ValueError):
    """The DFS stack reached n+1 vertices; ``path`` is a P_{n+1} in the graph."""

    def __init__(self, path):
        self.path = tuple(int(v) for v in path)
        super().__init__(f"graph contains P_{len(self.path)}: {self.path}")


@dataclass(frozen=True)
class Group:
    S: np.ndarray
    T: np.ndarray
    F: np.ndarray  # (m, 2), smaller endpoint first


@dataclass(frozen=True)
class Decomposition:
    n: int
    vertex_count: int
    groups: tuple[Group, ...]

    def to_text(self) -> str:
        lines = []
        for grp in self.groups:
            s = " ".join(map(str, grp.S.tolist()))
            t = " ".join(map(str, grp.T.tolist()))
            f = ",".join(f"{u}-{v}" for u, v in grp.F.tolist())
            lines.append(f"S: {s}; T: {t}; F: {f}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, n: int, vertex_count: int) -> "Decomposition":
        groups = []
        for line in text.splitlines():
            if not line.strip():
                continue
            fields = dict(part.strip().split(":", 1) for part in line.split(";"))
            s = np.array(fields["S"].split(), dtype=np.int64)
            t = np.array(fields["T"].split(), dtype=np.int64)
            pairs = [tuple(map(int, e.split("-"))) for e in fields["F"].strip().split(",") if e]
            f = np.array(pairs, dtype=np.int64).reshape(-1, 2)
            groups.append(Group(s, t, f))
        return cls(n, vertex_count, tuple(groups))


@dataclass(frozen=True)
class PairDensity:
    S: np.ndarray
    T: np.ndarray
    edges: int  # e(S) + e(S, T)


def dfs_decompose(h: Graph, n: int) -> Decomposition:
    """Split E(h) into groups F_i = E(S_i) + E(S_i, T_i) with |S_i|, |T_i| <= n.

    Raises :class:`StackOverflowWitness` if ``h`` contains P_{n+1}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    forest = dfs_forest(h, limit=n)
    if len(forest.witness):
        raise StackOverflowWitness(forest.witness)
    order, parent = forest.order, forest.parent
    disc = np.empty(h.vertex_count, dtype=np.int64)
    disc[order] = np.arange(h.vertex_count)

    edges = h.edges()
    later = np.where(disc[edges[:, 0]] > disc[edges[:, 1]], edges[:, 0], edges[:, 1])
    owner = disc[later] // n
    by_group = np.argsort(owner, kind="stable")
    n_groups = math.ceil(h.vertex_count / n)
    bounds = np.searchsorted(owner[by_group], np.arange(n_groups + 1))

    groups = []
    for i in range(n_groups):
        S = order[i * n:(i + 1) * n].copy()
        chain = []
        v = parent[S[0]]
        while v >= 0:
            chain.append(v)
            v = parent[v]
        T = np.array(chain[::-1], dtype=np.int64)
        F = edges[by_group[bounds[i]:bounds[i + 1]]]
        groups.append(Group(S, T, F))
    return Decomposition(n, h.vertex_count, tuple(groups))


def decomposition_verify(d: Decomposition, h: Graph) -> bool:
    """Check every structural invariant of ``d`` against ``h``."""
    N, n = h.vertex_count, d.n
    if d.vertex_count != N:
        return False
    owner = np.full(N, -1, dtype=np.int64)
    t_codes = []
    f_parts, f_owner = [], []
    for i, grp in enumerate(d.groups):
        S, T = np.asarray(grp.S), np.asarray(grp.T)
        if len(S) > n or len(T) > n or len(S) == 0:
            return False
        for arr in (S, T):
            if len(arr) and (arr.min() < 0 or arr.max() >= N):
                return False
        if np.any(owner[S] >= 0) or len(np.unique(S)) != len(S):
            return False
        owner[S] = i
        if len(np.unique(T)) != len(T):
            return False
        t_codes.append(i * N + T)
        F = np.asarray(grp.F, dtype=np.int64).reshape(-1, 2)
        f_parts.append(F)
        f_owner.append(np.full(len(F), i, dtype=np.int64))
    if np.any(owner < 0):
        return False
    for i, grp in enumerate(d.groups):
        if np.any(owner[np.asarray(grp.T, dtype=np.int64)] == i):
            return False

    F = np.concatenate(f_parts) if f_parts else np.empty((0, 2), dtype=np.int64)
    who = np.concatenate(f_owner) if f_owner else np.empty(0, dtype=np.int64)
    if len(F) != h.edge_count:
        return False
    if len(F):
        if F.min() < 0 or F.max() >= N:
            return False
        lo, hi = np.minimum(F[:, 0], F[:, 1]), np.maximum(F[:, 0], F[:, 1])
        order = np.lexsort((hi, lo))
        lo, hi, who = lo[order], hi[order], who[order]
        if not np.array_equal(np.column_stack([lo, hi]), h.edges()):
            return False
        tc = np.sort(np.concatenate(t_codes)) if t_codes else np.empty(0, dtype=np.int64)

        def in_t(x):
            if len(tc) == 0:
                return np.zeros(len(x), dtype=bool)
            codes = who * N + x
            pos = np.searchsorted(tc, codes)
            return (pos < len(tc)) & (tc[np.minimum(pos, len(tc) - 1)] == codes)

        lo_s, hi_s = owner[lo] == who, owner[hi] == who
        ok = (lo_s & (hi_s | in_t(hi))) | (hi_s & in_t(lo))
        if not ok.all():
            return False
    return True


def certified_upper_bound(g: Graph, n: int) -> int:
    """A deterministic upper bound on ex(g, P_{n+1}).

    Each F_i of any P_{n+1}-free H in g has at most the degree sum of S_i,
    hence at most D_n, the sum of the n largest degrees of g.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if g.edge_count == 0:
        return 0
    d = np.sort(g.degrees)[::-1]
    top = int(d[:n].sum())
    return min(g.edge_count, math.ceil(g.vertex_count / n) * top)


def _ceil(x: float) -> int:
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


def dense_pair_budget(n: int, p: float) -> int:
    """ceil(18 n^2 p): edge budget of any (S, T) pair when np >= log(N/n)/6."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("need n >= 1 and p in [0, 1]")
    return _ceil(18 * n * n * p)


def sparse_pair_budget(N: float, n: int, p: float) -> int:
    """ceil(8 beta n^2 p) with beta = x / log x, x = log(N/n)/(np)."""
    x = math.log(N / n) / (n * p)
    if x <= 1.0:
        raise ValueError(f"beta = x/log x needs x > 1; here x = log(N/n)/(np) = {x!r}")
    beta = x / math.log(x)
    if beta <= 1.0:
        raise ValueError(f"beta must exceed 1, computed {beta!r}")
    return _ceil(8 * beta * n * n * p)


def pair_density(g: Graph, S, T) -> PairDensity:
    S = np.asarray(S, dtype=np.int64)
    T = np.asarray(T, dtype=np.int64)
    inner = len(g.induced_edges(S))
    cross = int(g.count_into(T, S).sum())
    return PairDensity(S, T, inner + cross)


def sample_pair_max(g: Graph, n: int, samples: int, seed: int = 0) -> int:
    """Max of e(S) + e(S, T) over random disjoint n-sets S, T."""
    from . import rng

    gen = rng.generator(seed, rng.PARTITION, n)
    best = 0
    for _ in range(samples):
        pick = gen.choice(g.vertex_count, size=2 * n, replace=False)
        best = max(best, pair_density(g, pick[:n], pick[n:]).edges)
    return best
