"""Edge colorings without monochromatic P_{n+1}.

The main construction places the N vertices into q^2 equal parts indexed by
the points of the affine plane AG(2, q), q = N/n. An edge between parts x and
y takes the index of the parallel class holding the line through x and y, so
every monochromatic component lives inside the parts along one line and has
at most q * (n/q) = n vertices.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .bounds import prime_power
from .decomp import certified_upper_bound
from .fields import GaloisField, NotPrimePower, galois_field
from .graph import Graph, component_sizes
from .paths import Answer, DetectionBudget, has_path


@dataclass(frozen=True, eq=False)
class AffinePlane:
    """AG(2, q). Point (x, y) has id ``x * q + y``.

    ``classes[c, l]`` lists the q points of line l in parallel class c. Classes
    0..q-1 hold the lines y = c*x + l; class q holds the verticals x = l.
    """

    q: int
    field: GaloisField
    classes: np.ndarray  # (q + 1, q, q)

    @property
    def line_count(self) -> int:
        return self.classes.shape[0] * self.classes.shape[1]

    def pair_class(self, a, b) -> np.ndarray:
        """Parallel class of the line through points a != b."""
        a = np.asarray(a)
        b = np.asarray(b)
        q, F = self.q, self.field
        x1, y1, x2, y2 = a // q, a % q, b // q, b % q
        vertical = x1 == x2
        dx = np.where(vertical, 1, F.sub(x2, x1))
        slope = F.div(F.sub(y2, y1), dx)
        return np.where(vertical, q, slope)

    def dump(self) -> str:
        rows = []
        for c in range(self.classes.shape[0]):
            for l in range(self.q):
                rows.append(",".join(map(str, [c, l, *self.classes[c, l].tolist()])))
        return "\n".join(rows) + "\n"


def affine_plane(q: int) -> AffinePlane:
    F = galois_field(q)
    xs = np.arange(q)
    classes = np.empty((q + 1, q, q), dtype=np.int64)
    for slope in range(q):
        for b in range(q):
            ys = F.add[F.mul[slope, xs], b]
            classes[slope, b] = xs * q + ys
    for c in range(q):
        classes[q, c] = c * q + xs
    classes.flags.writeable = False
    return AffinePlane(q, F, classes)


def plane_axioms_hold(plane: AffinePlane) -> bool:
    """Line count q^2+q, each class partitions the points, each pair on one line."""
    q = plane.q
    if plane.line_count != q * q + q:
        return False
    for c in range(q + 1):
        pts = np.sort(plane.classes[c].ravel())
        if not np.array_equal(pts, np.arange(q * q)):
            return False
    incidence = np.zeros((q * q + q, q * q), dtype=np.int64)
    for idx, line in enumerate(plane.classes.reshape(-1, q)):
        if len(np.unique(line)) != q:
            return False
        incidence[idx, line] = 1
    cover = incidence.T @ incidence
    off = cover[~np.eye(q * q, dtype=bool)]
    return bool(np.all(off == 1))


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """Colors 1..k assigned to the edges of a graph on ``vertex_count`` vertices."""

    k: int
    vertex_count: int
    edges: np.ndarray
    colors: np.ndarray

    def class_edges(self, color: int) -> np.ndarray:
        return self.edges[self.colors == color]

    def class_graph(self, color: int) -> Graph:
        return Graph.from_edges(self.vertex_count, self.class_edges(color), check=False)

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.colors, minlength=self.k + 1)[1:]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "color"])
        w.writerows(np.column_stack([self.edges, self.colors]).tolist())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, vertex_count: int, k: int | None = None) -> "EdgeColoring":
        rows = list(csv.DictReader(io.StringIO(text)))
        e = np.array([[int(r["u"]), int(r["v"])] for r in rows], dtype=np.int64).reshape(-1, 2)
        c = np.array([int(r["color"]) for r in rows], dtype=np.int64)
        return cls(k if k is not None else int(c.max(initial=0)), vertex_count, e, c)


def affine_coloring(N: int, n: int, seed: int = 0, host: Graph | None = None) -> EdgeColoring:
    """(r+1)-coloring of K_N (or of ``host``) with no monochromatic P_{n+1}, r = N/n.

    Needs r a prime power dividing n. Edges inside a part get color 1; the
    part lies on exactly one line of class 1, so the component bound survives.
    """
    if n < 1 or N % n:
        raise ValueError(f"N = {N} is not a multiple of n = {n}")
    r = N // n
    if prime_power(r) is None:
        raise NotPrimePower(r)
    if n % r:
        raise ValueError(f"r = {r} must divide n = {n} so that parts have n/r vertices")
    plane = affine_plane(r)
    size = n // r
    perm = rng.generator(seed, rng.PARTITION).permutation(N)
    point = np.empty(N, dtype=np.int64)
    point[perm] = np.arange(N) // size

    if host is None:
        u, v = np.triu_indices(N, 1)
        edges = np.column_stack([u, v]).astype(np.int64)
    else:
        if host.vertex_count != N:
            raise ValueError("host graph must have N vertices")
        edges = host.edges()
    a, b = point[edges[:, 0]], point[edges[:, 1]]
    same = a == b
    cls = plane.pair_class(a, np.where(same, (a + 1) % (r * r), b))
    colors = np.where(same, 1, cls + 1)
    return EdgeColoring(r + 1, N, edges, colors.astype(np.int64))


def random_coloring(g: Graph, k: int, seed: int = 0) -> EdgeColoring:
    if k < 1:
        raise ValueError("k must be >= 1")
    edges = g.edges()
    colors = rng.generator(seed, rng.COLORS).integers(1, k + 1, size=len(edges))
    return EdgeColoring(k, g.vertex_count, edges, colors.astype(np.int64))


def block_coloring(g: Graph, n: int, seed: int = 0) -> EdgeColoring:
    """Color by a round-robin schedule on blocks of floor(n/2) vertices.

    Each color class pairs up blocks (a perfect matching of blocks), so its
    components have at most 2 floor(n/2) <= n vertices.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    half = n // 2
    N = g.vertex_count
    perm = rng.generator(seed, rng.PARTITION, 2).permutation(N)
    block = np.empty(N, dtype=np.int64)
    block[perm] = np.arange(N) // half
    m = int(block.max()) + 1 if N else 1
    m_even = m + (m % 2)
    rounds = max(1, m_even - 1)
    edges = g.edges()
    a, b = block[edges[:, 0]], block[edges[:, 1]]
    if m_even == 2:
        colors = np.ones(len(edges), dtype=np.int64)
        return EdgeColoring(1, N, edges, colors)
    inv2 = (rounds + 1) // 2  # inverse of 2 modulo the odd number `rounds`
    fixed = m_even - 1
    t = np.where(a == fixed, b, np.where(b == fixed, a, ((a + b) * inv2) % rounds))
    colors = np.where(a == b, 1, t + 1)
    return EdgeColoring(rounds, N, edges, colors.astype(np.int64))


@dataclass(frozen=True)
class ColoringCheck:
    passed: bool | None          # None: some class was inconclusive
    max_component: int
    witness: tuple[int, ...] | None = None
    witness_color: int | None = None
    inconclusive: tuple[int, ...] = ()


def coloring_verify(g: Graph, c: EdgeColoring, n: int,
                    budget: DetectionBudget | None = None) -> ColoringCheck:
    """Is every color class of ``c`` free of P_{n+1}?"""
    if len(c.edges) != g.edge_count:
        raise ValueError("coloring is not total on the graph")
    worst, unknown = 0, []
    for color in range(1, c.k + 1):
        sub = c.class_graph(color)
        if sub.edge_count == 0:
            worst = max(worst, 1)
            continue
        worst = max(worst, int(component_sizes(sub).max()))
        verdict = has_path(sub, n + 1, budget)
        if verdict.contains is Answer.YES:
            return ColoringCheck(False, worst, verdict.witness, color)
        if verdict.contains is Answer.UNKNOWN:
            unknown.append(color)
    if unknown:
        return ColoringCheck(None, worst, inconclusive=tuple(unknown))
    return ColoringCheck(True, worst)


@dataclass(frozen=True)
class ColorNumberEstimate:
    lower: int
    upper: int
    lower_method: str
    upper_method: str


def c_estimate(g: Graph, n: int, trials: int = 5, seed: int = 0,
               budget: DetectionBudget | None = None) -> ColorNumberEstimate:
    """Bracket c(g, P_{n+1}), the fewest colors avoiding a monochromatic P_{n+1}.

    Upper: the best verified coloring among the affine construction (when
    N/n is a prime power dividing n), block colorings and random colorings
    (binary search on k). Lower: ceil(e(g) / U) with U a certified upper bound
    on ex(g, P_{n+1}), since every color class has at most ex edges.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if g.edge_count == 0:
        return ColorNumberEstimate(1, 1, "edgeless convention", "edgeless convention")

    best, how = None, ""
    N = g.vertex_count
    if N % n == 0:
        r = N // n
        if r >= 2 and prime_power(r) and n % r == 0:
            col = affine_coloring(N, n, seed, host=g)
            if coloring_verify(g, col, n, budget).passed:
                best, how = col.k, "affine plane"
    col = block_coloring(g, n, seed)
    if coloring_verify(g, col, n, budget).passed and (best is None or col.k < best):
        best, how = col.k, "block round-robin"

    def random_passes(k: int) -> bool:
        for t in range(trials):
            cand = random_coloring(g, k, rng.derive_seed(seed, t))
            if coloring_verify(g, cand, n, budget).passed:
                return True
        return False

    lo, hi = 1, (best - 1) if best is not None else max(1, g.edge_count)
    found = None
    while lo <= hi:
        mid = (lo + hi) // 2
        if random_passes(mid):
            found, hi = mid, mid - 1
        else:
            lo = mid + 1
    if found is not None:
        best, how = found, "random coloring"
    if best is None:
        best, how = g.edge_count, "one color per edge"

    cap = certified_upper_bound(g, n)
    lower = max(1, math.ceil(g.edge_count / cap)) if cap else 1
    return ColorNumberEstimate(lower, best, "e(g) / certified ex upper bound", how)
