"""P_{n+1}-free subgraphs of a host graph with many edges.

Every construction here keeps each component of H inside a vertex set of at
most n vertices, so H is P_{n+1}-free by a component-size certificate:

* ``blocks_construct``: split the vertices into blocks of <= n and keep the
  edges inside blocks.
* ``isolated_edge_construct``: keep the edges that are components of g.
* ``dense_extract`` / ``repeated_dense_construct``: grow an n-set A out of
  parts A_1, ..., A_{1/alpha} where each new part is drawn from the vertices
  with at least beta*alpha*n*p neighbors in every earlier part, then keep E(A).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .bounds import beta_window
from .graph import Graph, HashedGnp, component_sizes, dfs_forest

SELECTIONS = ("random", "greedy-degree")
# Greedy selection on a lazily evaluated graph touches |B|^2 pairs.
_GREEDY_PAIR_LIMIT = 1 << 26


class ExtractionFailed(RuntimeError):
    """Fewer than alpha*n vertices survived into B_step."""

    def __init__(self, step: int, survivors: int):
        super().__init__(f"extraction failed: |B_{step}| = {survivors} is too small")
        self.step = step
        self.survivors = survivors


@dataclass(frozen=True)
class DenseExtractionParams:
    n: int
    alpha: float = 0.5
    beta: float | None = None  # None: middle of the admissible window
    selection: str = "random"

    def __post_init__(self):
        inv = 1.0 / self.alpha
        parts = round(inv)
        if abs(inv - parts) > 1e-9:
            warnings.warn(f"1/alpha = {inv:g} is not an integer; using alpha = 1/{parts}",
                          stacklevel=3)
            object.__setattr__(self, "alpha", 1.0 / parts)
        if not 2 <= parts <= 8:
            raise ValueError(f"1/alpha must be an integer in 2..8, got {inv:g}")
        if self.n % parts:
            raise ValueError(f"n = {self.n} must split into {parts} equal parts")
        if self.beta is not None and self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.selection not in SELECTIONS:
            raise ValueError(f"selection must be one of {SELECTIONS}")

    @property
    def parts(self) -> int:
        return round(1.0 / self.alpha)

    @property
    def part_size(self) -> int:
        return self.n // self.parts


@dataclass(frozen=True, eq=False)
class DenseExtractionResult:
    A: np.ndarray
    parts: tuple[np.ndarray, ...]
    internal_edges: int
    survivor_counts: tuple[int, ...]  # |B_0|, |B_1|, ... as far as they were computed
    threshold: float
    beta: float
    p: float
    alpha: float

    @property
    def guarantee(self) -> float:
        """((1 - alpha)/2) beta p n^2, implied by the per-part degree thresholds."""
        n = len(self.A)
        return (1 - self.alpha) / 2 * self.beta * self.p * n * n


@dataclass(frozen=True, eq=False)
class ConstructionResult:
    vertex_count: int
    edges: np.ndarray
    n: int
    max_component: int
    certificate: str
    rounds: int | None = None
    failure: str | None = None
    extractions: tuple[DenseExtractionResult, ...] = field(default=(), repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def graph(self) -> Graph:
        return Graph.from_edges(self.vertex_count, self.edges, check=False)

    def to_text(self) -> str:
        lines = [f"# certificate: {self.certificate} max_component={self.max_component} n={self.n}",
                 f"{self.vertex_count} {self.edge_count}"]
        lines += [f"{u} {v}" for u, v in self.edges.tolist()]
        return "\n".join(lines) + "\n"


def _finish(N: int, edges: np.ndarray, n: int, **extra) -> ConstructionResult:
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if len(edges):
        edges = np.column_stack([edges.min(axis=1), edges.max(axis=1)])
        edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    h = Graph.from_edges(N, edges, check=False)
    biggest = int(component_sizes(h).max()) if N else 0
    if biggest > n:
        raise AssertionError(f"construction left a component of {biggest} > n = {n} vertices")
    return ConstructionResult(N, edges, n, biggest, "component-size", **extra)


def _induced_edges_many(g, sets: list[np.ndarray]) -> np.ndarray:
    if not sets:
        return np.empty((0, 2), dtype=np.int64)
    if isinstance(g, HashedGnp):
        sizes = {len(s) for s in sets}
        out = []
        for size in sizes:
            block = np.array([s for s in sets if len(s) == size], dtype=np.int64)
            i, j = np.triu_indices(size, 1)
            u, v = block[:, i].ravel(), block[:, j].ravel()
            keep = g.has_edges(u, v)
            out.append(np.column_stack([u[keep], v[keep]]))
        return np.concatenate(out)
    label = np.full(g.vertex_count, -1, dtype=np.int64)
    for idx, s in enumerate(sets):
        label[s] = idx
    members = np.concatenate(sets)
    owner, nbrs = g._rows(members)
    keep = (label[nbrs] == label[owner]) & (owner < nbrs)
    return np.column_stack([owner[keep], nbrs[keep]])


def blocks_construct(g, n: int, seed: int = 0, partition: str = "random") -> ConstructionResult:
    """Keep the edges inside the blocks of a partition into ceil(N/n) blocks of <= n.

    ``partition="random"`` deals a random permutation round-robin (equitable
    sizes); ``"dfs"`` cuts the depth-first discovery order into consecutive
    runs of n, which keeps most DFS tree edges inside blocks.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    N = g.vertex_count
    m = math.ceil(N / n) if N else 0
    if partition == "random":
        perm = rng.generator(seed, rng.PARTITION).permutation(N)
        block = np.empty(N, dtype=np.int64)
        block[perm] = np.arange(N) % max(m, 1)
    elif partition == "dfs":
        if not isinstance(g, Graph):
            raise ValueError("DFS partition needs an explicit graph")
        order = dfs_forest(g).order
        block = np.empty(N, dtype=np.int64)
        block[order] = np.arange(N) // n
    else:
        raise ValueError(f"unknown partition {partition!r}")

    if isinstance(g, HashedGnp):
        order = np.argsort(block, kind="stable")
        sets = np.split(order, np.cumsum(np.bincount(block, minlength=m))[:-1])
        edges = _induced_edges_many(g, sets)
    else:
        e = g.edges()
        edges = e[block[e[:, 0]] == block[e[:, 1]]]
    return _finish(N, edges, n)


def isolated_edge_construct(g: Graph, n: int = 2) -> ConstructionResult:
    """All isolated edges of g; P_3-free, hence P_{n+1}-free for n >= 2."""
    e = g.edges()
    d = g.degrees
    keep = (d[e[:, 0]] == 1) & (d[e[:, 1]] == 1)
    return _finish(g.vertex_count, e[keep], max(n, 2))


class _Pool:
    """Live vertices, sampled uniformly by rejection from a compacting base array."""

    def __init__(self, vertex_count: int, live: np.ndarray):
        self.alive = np.zeros(vertex_count, dtype=bool)
        self.alive[live] = True
        self.base = np.asarray(live, dtype=np.int64)
        self.size = int(self.alive[self.base].sum())

    def members(self) -> np.ndarray:
        self._compact()
        return self.base.copy()

    def remove(self, vs: np.ndarray) -> None:
        self.alive[vs] = False
        self.size -= len(vs)

    def _compact(self) -> None:
        if len(self.base) != self.size:
            self.base = self.base[self.alive[self.base]]

    def draw(self, count: int, gen: np.random.Generator) -> np.ndarray:
        """Up to ``count`` live vertices, independent uniform picks (may repeat)."""
        if self.size * 2 < len(self.base):
            self._compact()
        picks = self.base[gen.integers(0, len(self.base), size=count)]
        return picks[self.alive[picks]]


def _unique_in_order(x: np.ndarray) -> np.ndarray:
    _, first = np.unique(x, return_index=True)
    return x[np.sort(first)]


def _passes(g, cand: np.ndarray, chosen: list[np.ndarray], thr: float) -> np.ndarray:
    ok = np.ones(len(cand), dtype=bool)
    for part in chosen:
        idx = np.flatnonzero(ok)
        if len(idx) == 0:
            break
        ok[idx] = g.count_into(cand[idx], part) >= thr
    return ok


def _scan_part(g, pool: _Pool, chosen: list[np.ndarray], size: int, thr: float,
               gen: np.random.Generator, step: int) -> np.ndarray:
    """A uniform ``size``-subset of B_step, found by testing random live vertices."""
    if chosen and thr > len(chosen[0]):
        raise ExtractionFailed(step, 0)
    tested = np.zeros(0, dtype=np.int64)
    taken = np.concatenate(chosen) if chosen else np.zeros(0, dtype=np.int64)
    got: list[np.ndarray] = []
    n_got = 0
    rate = 1.0
    while n_got < size:
        available = pool.size - len(taken)
        if len(tested) * 2 >= available:
            # most of the pool has been looked at: finish exactly
            rest = np.setdiff1d(pool.members(), np.concatenate([tested, taken]))
            rest = rest[gen.permutation(len(rest))]
            ok = rest[_passes(g, rest, chosen, thr)]
            if n_got + len(ok) < size:
                raise ExtractionFailed(step, n_got + len(ok))
            got.append(ok[:size - n_got])
            break
        want = int(min(available, 2 * (size - n_got) / max(rate, 1e-3) + 16))
        cand = _unique_in_order(pool.draw(want, gen))
        cand = cand[~np.isin(cand, tested) & ~np.isin(cand, taken)]
        if len(cand) == 0:
            continue
        tested = np.concatenate([tested, cand])
        ok = cand[_passes(g, cand, chosen, thr)]
        got.append(ok[:size - n_got])
        n_got += len(got[-1])
        rate = max(n_got, 1) / len(tested)
    return np.concatenate(got)


def _select(g, B: np.ndarray, size: int, selection: str, gen: np.random.Generator) -> np.ndarray:
    if selection == "random":
        return B[gen.choice(len(B), size=size, replace=False)]
    if isinstance(g, HashedGnp) and len(B) * len(B) > _GREEDY_PAIR_LIMIT:
        raise ValueError("greedy-degree selection on a lazy graph this large is too costly")
    score = g.count_into(B, B)
    return B[np.argsort(-score, kind="stable")[:size]]


def _extract(g, pool: _Pool, params: DenseExtractionParams, beta: float, p: float,
             gen: np.random.Generator, survivors: str) -> DenseExtractionResult:
    size, parts = params.part_size, params.parts
    thr = beta * params.alpha * params.n * p
    chosen: list[np.ndarray] = []
    counts = [pool.size]
    if survivors == "full":
        B = pool.members()
        for i in range(1, parts + 1):
            if len(B) < size:
                raise ExtractionFailed(i - 1, len(B))
            A = _select(g, B, size, params.selection, gen)
            chosen.append(A)
            if i < parts:
                rest = np.setdiff1d(B, A, assume_unique=True)
                B = rest[g.count_into(rest, A) >= thr]
                counts.append(len(B))
    elif survivors == "scan":
        if params.selection != "random":
            raise ValueError("scan mode supports random selection only")
        if pool.size < size:
            raise ExtractionFailed(0, pool.size)
        for i in range(1, parts + 1):
            chosen.append(_scan_part(g, pool, chosen, size, thr, gen, i - 1))
    else:
        raise ValueError(f"survivors must be 'full' or 'scan', got {survivors!r}")

    A = np.concatenate(chosen)
    internal = len(_induced_edges_many(g, [A]))
    return DenseExtractionResult(A, tuple(chosen), internal, tuple(counts), thr, beta, p,
                                 params.alpha)


def _edge_prob(g, p: float | None) -> float:
    if p is not None:
        return p
    if getattr(g, "params", None) is not None:
        return g.params.edge_prob
    raise ValueError("p is unknown: pass it explicitly or use a graph carrying GnpParams")


def default_beta(pool_size: int, params: DenseExtractionParams, p: float) -> float:
    """Middle of the admissible window for 2 beta log beta, with r = pool_size/n."""
    return beta_window(pool_size, params.n, p, params.alpha).beta_mid


def dense_extract(g, live, params: DenseExtractionParams, seed: int = 0,
                  p: float | None = None, survivors: str = "full",
                  attempts: int = 1) -> DenseExtractionResult:
    """Find an n-set A in ``live`` with e(A) >= ((1 - alpha)/2) beta p n^2.

    B_0 = live; for i = 1..1/alpha pick A_i of alpha*n vertices from B_{i-1}
    and let B_i be the rest of B_{i-1} with at least beta*alpha*n*p neighbors
    in A_i. ``survivors="full"`` computes every B_i; ``"scan"`` only tests
    random live vertices until enough members of B_{i-1} turn up, which gives
    the same distribution of A without touching the whole pool (only |B_0| is
    then recorded in ``survivor_counts``).

    A failed run is repeated with fresh randomness up to ``attempts`` times in
    total; :class:`ExtractionFailed` from the last run is raised.
    """
    live = np.unique(np.asarray(live, dtype=np.int64))
    if len(live) < params.n:
        raise ValueError(f"need at least n = {params.n} live vertices, got {len(live)}")
    p = _edge_prob(g, p)
    beta = params.beta if params.beta is not None else default_beta(len(live), params, p)
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    gen = rng.generator(seed, rng.SELECT)
    for attempt in range(attempts):
        try:
            return _extract(g, _Pool(g.vertex_count, live), params, beta, p, gen, survivors)
        except ExtractionFailed:
            if attempt == attempts - 1:
                raise
    raise AssertionError("unreachable")


def repeated_dense_construct(g, n: int, params: DenseExtractionParams, rounds: int | None = None,
                             seed: int = 0, p: float | None = None,
                             survivors: str = "scan") -> ConstructionResult:
    """Extract disjoint dense n-sets one after another and keep their edges.

    Runs ``rounds`` extractions (default N // (4n), which leaves at least 3N/4
    vertices in the pool), each on the vertices not used so far, and stops at
    the first failure. The default beta is the window middle for a pool of
    3N/4 vertices.
    """
    if params.n != n:
        raise ValueError("params.n and n disagree")
    N = g.vertex_count
    rounds = N // (4 * n) if rounds is None else rounds
    p = _edge_prob(g, p)
    beta = params.beta
    if beta is None:
        beta = default_beta(math.ceil(3 * N / 4), params, p)
    gen = rng.generator(seed, rng.SELECT)
    pool = _Pool(N, np.arange(N, dtype=np.int64))
    found: list[DenseExtractionResult] = []
    failure = None
    for _ in range(rounds):
        if pool.size < n:
            failure = f"pool exhausted ({pool.size} < n)"
            break
        try:
            res = _extract(g, pool, params, beta, p, gen, survivors)
        except ExtractionFailed as exc:
            failure = str(exc)
            break
        pool.remove(res.A)
        found.append(res)
    edges = _induced_edges_many(g, [r.A for r in found])
    return _finish(N, edges, n, rounds=len(found), failure=failure, extractions=tuple(found))
