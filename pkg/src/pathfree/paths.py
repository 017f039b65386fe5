"""Deciding whether a graph contains P_k, the path on k vertices.

``has_path`` walks a ladder of increasingly expensive tests and only ever
answers NO with an exact certificate. Randomized color coding can produce a
YES, never a NO: when it runs out of rounds the answer is UNKNOWN.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numba
import numpy as np

from . import rng
from .graph import Graph, component_labels, dfs_forest, induced_subgraph, is_path_in

EXACT_COMPONENT_LIMIT = 24
# Color-coding tables hold 2**k * N flags; beyond this the search is skipped.
COLOR_TABLE_LIMIT = 1 << 26


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Certificate(enum.Enum):
    COMPONENT_SIZE = "component-size bound"
    EXHAUSTIVE_DP = "exhaustive DP"
    DFS_DEPTH = "DFS-depth witness"
    DP_WITNESS = "DP witness"
    COLOR_CODING_WITNESS = "color-coding witness"
    COLOR_CODING_EXHAUSTED = "color-coding rounds exhausted"


class ComponentTooLarge(ValueError):
    def __init__(self, size: int, limit: int = EXACT_COMPONENT_LIMIT):
        super().__init__(f"component with {size} vertices exceeds the exact limit of {limit}")
        self.size = size


@dataclass(frozen=True)
class DetectionBudget:
    """Controls the randomized rung of :func:`has_path`.

    ``delta`` is the tolerated false-negative probability of color coding;
    ``max_rounds`` caps the work regardless (an exhausted cap still yields
    UNKNOWN, never NO).
    """

    delta: float = 0.01
    max_rounds: int = 2000
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")


@dataclass(frozen=True)
class PathVerdict:
    contains: Answer
    witness: tuple[int, ...] | None = None
    certificate: Certificate | None = None

    def __post_init__(self):
        if self.contains is Answer.NO and self.certificate not in (
                Certificate.COMPONENT_SIZE, Certificate.EXHAUSTIVE_DP):
            raise ValueError("a NO verdict needs an exact certificate")

    @property
    def witness_csv(self) -> str:
        return " ".join(map(str, self.witness)) if self.witness else ""


def color_coding_rounds(k: int, delta: float) -> int:
    """Smallest t with (1 - k!/k^k)^t <= delta."""
    if k < 1 or not 0.0 < delta < 1.0:
        raise ValueError("need k >= 1 and 0 < delta < 1")
    success = math.factorial(k) / k**k
    if success >= 1.0:
        return 1
    log_miss = math.log1p(-success)
    t = max(1, math.ceil(math.log(delta) / log_miss))
    # guard the ceiling against rounding in either direction
    while t > 1 and math.exp((t - 1) * log_miss) <= delta:
        t -= 1
    while math.exp(t * log_miss) > delta:
        t += 1
    return t


@numba.njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@numba.njit(cache=True)
def _subset_dp(adj):
    """ends[mask] has bit v set iff some path covers exactly ``mask`` and ends at v."""
    c = adj.shape[0]
    ends = np.zeros(1 << c, np.uint32)
    for v in range(c):
        ends[1 << v] = 1 << v
    best = 1 if c > 0 else 0
    best_mask = 1 if c > 0 else 0
    for mask in range(1, 1 << c):
        e = ends[mask]
        if e == 0:
            continue
        pc = _popcount(mask)
        if pc > best:
            best = pc
            best_mask = mask
            if best == c:
                break
        for v in range(c):
            if (e >> v) & 1:
                ext = adj[v] & ~mask
                w = 0
                while ext:
                    if ext & 1:
                        ends[mask | (1 << w)] |= np.uint32(1 << w)
                    ext >>= 1
                    w += 1
    return best, best_mask, ends


def _dp_path(adj: np.ndarray, ends: np.ndarray, mask: int) -> list[int]:
    v = next(i for i in range(len(adj)) if (int(ends[mask]) >> i) & 1)
    path = [v]
    while mask & (mask - 1):
        prev = mask ^ (1 << v)
        cand = int(ends[prev])
        u = next(i for i in range(len(adj)) if (cand >> i) & 1 and (int(adj[i]) >> v) & 1)
        path.append(u)
        mask, v = prev, u
    return path


def _local_masks(sub: Graph) -> np.ndarray:
    return np.array(sub.masks(), dtype=np.int64)


def _component_groups(g: Graph):
    count, labels = component_labels(g)
    order = np.argsort(labels, kind="stable")
    return np.split(order, np.cumsum(np.bincount(labels, minlength=count))[:-1])


def longest_path_exact(g: Graph) -> int:
    """Number of vertices on a longest path, by subset DP per component."""
    if g.vertex_count == 0:
        return 0
    best = 1
    for comp in _component_groups(g):
        if len(comp) > EXACT_COMPONENT_LIMIT:
            raise ComponentTooLarge(len(comp))
        if len(comp) <= best:
            continue
        sub, _ = induced_subgraph(g, comp)
        if sub.edge_count == len(comp) - 1 and sub.degrees.max() <= 2:
            best = max(best, len(comp))
            continue
        length, _, _ = _subset_dp(_local_masks(sub))
        best = max(best, int(length))
    return best


@numba.njit(cache=True)
def _colorful_path(indptr, indices, colors, k):
    nv = indptr.shape[0] - 1
    full = 1 << k
    pred = np.full((full, nv), -2, np.int64)
    for v in range(nv):
        pred[1 << colors[v], v] = -1
    for mask in range(1, full):
        pc = _popcount(mask)
        for v in range(nv):
            if pred[mask, v] == -2:
                continue
            if pc == k:
                path = np.empty(k, np.int64)
                m = mask
                u = v
                for i in range(k):
                    path[i] = u
                    nxt = pred[m, u]
                    m ^= 1 << colors[u]
                    u = nxt
                return path
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                bit = 1 << colors[w]
                if mask & bit:
                    continue
                if pred[mask | bit, w] == -2:
                    pred[mask | bit, w] = v
    return np.empty(0, np.int64)


def color_coding_search(g: Graph, k: int, rounds: int, seed: int = 0) -> tuple[int, ...] | None:
    """Look for P_k by random k-colorings; returns a witness or None."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if (1 << k) * max(g.vertex_count, 1) > COLOR_TABLE_LIMIT:
        return None
    gen = rng.generator(seed, rng.COLORS, k)
    for _ in range(rounds):
        colors = gen.integers(0, k, size=g.vertex_count).astype(np.int64)
        path = _colorful_path(g.indptr, g.indices, colors, k)
        if len(path):
            return tuple(int(v) for v in path)
    return None


def has_path(g: Graph, k: int, budget: DetectionBudget | None = None) -> PathVerdict:
    """Does ``g`` contain a path on ``k`` vertices?

    Ladder: all components smaller than k -> NO; a DFS stack reaching k
    vertices -> YES; largest relevant component within the exact limit ->
    subset DP; otherwise color coding, which is YES or UNKNOWN.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    budget = budget or DetectionBudget()
    if g.vertex_count == 0:
        return PathVerdict(Answer.NO, certificate=Certificate.COMPONENT_SIZE)
    if k == 1:
        return PathVerdict(Answer.YES, (0,), Certificate.DFS_DEPTH)

    groups = [c for c in _component_groups(g) if len(c) >= k]
    if not groups:
        return PathVerdict(Answer.NO, certificate=Certificate.COMPONENT_SIZE)

    forest = dfs_forest(g, limit=k - 1)
    if len(forest.witness):
        return PathVerdict(Answer.YES, tuple(int(v) for v in forest.witness[:k]),
                           Certificate.DFS_DEPTH)

    if max(len(c) for c in groups) <= EXACT_COMPONENT_LIMIT:
        for comp in groups:
            sub, labels = induced_subgraph(g, comp)
            adj = _local_masks(sub)
            length, mask, ends = _subset_dp(adj)
            if length >= k:
                path = _dp_path(adj, ends, int(mask))[:k]
                return PathVerdict(Answer.YES, tuple(int(labels[v]) for v in path),
                                   Certificate.DP_WITNESS)
        return PathVerdict(Answer.NO, certificate=Certificate.EXHAUSTIVE_DP)

    rounds = min(color_coding_rounds(k, budget.delta), budget.max_rounds)
    big = np.concatenate(groups)
    sub, labels = induced_subgraph(g, np.sort(big))
    found = color_coding_search(sub, k, rounds, budget.seed)
    if found is not None:
        return PathVerdict(Answer.YES, tuple(int(labels[v]) for v in found),
                           Certificate.COLOR_CODING_WITNESS)
    return PathVerdict(Answer.UNKNOWN, certificate=Certificate.COLOR_CODING_EXHAUSTED)


def check_witness(g: Graph, verdict: PathVerdict, k: int) -> bool:
    """Re-validate a YES verdict: k distinct vertices, consecutive ones adjacent."""
    if verdict.contains is not Answer.YES:
        return verdict.witness is None
    return verdict.witness is not None and len(verdict.witness) == k and is_path_in(g, verdict.witness)


def longest_path_bruteforce(g: Graph) -> int:
    """Longest path by trying every vertex ordering; only for tiny graphs."""
    from itertools import permutations

    n = g.vertex_count
    if n == 0:
        return 0
    masks = g.masks()
    best = 1
    for length in range(n, 1, -1):
        for perm in permutations(range(n), length):
            if all((masks[a] >> b) & 1 for a, b in zip(perm, perm[1:])):
                return length
    return best
