"""Experiments, the exact ex(g, P_k) oracle, and CSV reporting."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path

import numba
import numpy as np

from . import rng
from .bounds import (OUT_OF_SCOPE, beta_window, erdos_gallai_max, expected_isolated_edges,
                     regime_classify)
from .coloring import coloring_verify, random_coloring
from .construct import (DenseExtractionParams, ExtractionFailed, blocks_construct, dense_extract,
                        repeated_dense_construct)
from .decomp import certified_upper_bound
from .graph import (Graph, GnpParams, HashedGnp, component_sizes, gnp, isolated_edge_count)
from .paths import (Answer, DetectionBudget, has_path, longest_path_bruteforce,
                    longest_path_exact)

KINDS = ("sandwich", "prop12", "dense-extract", "density-threshold", "coloring", "oracle-suite")
DEFAULT_PASS_RATE = {
    "sandwich": 0.99,
    "prop12": 0.95,
    "dense-extract": 0.9,
    "density-threshold": 0.9,
    "coloring": 0.9,
    "oracle-suite": 1.0,
}
_OVERRIDE_KEYS = {"alpha": float, "beta": float, "rounds": int, "k": int, "delta": float,
                  "c": int, "threshold": float}


class InstanceTooLarge(ValueError):
    pass


class PreconditionError(ValueError):
    """Experiment parameters rejected before any sampling."""


# ---------------------------------------------------------------- exact oracle

@numba.njit(cache=True)
def _path_from(adj, start, blocked, need):
    """Is there a path of >= need vertices starting at ``start`` avoiding ``blocked``?"""
    if need <= 1:
        return True
    n = adj.shape[0]
    stack = np.empty(n, np.int64)
    rest = np.empty(n, np.int64)
    stack[0] = start
    used = blocked | (np.int64(1) << start)
    rest[0] = adj[start] & ~used
    depth = 1
    while depth > 0:
        if depth >= need:
            return True
        cand = rest[depth - 1]
        if cand == 0:
            depth -= 1
            used &= ~(np.int64(1) << stack[depth])
            continue
        low = cand & -cand
        rest[depth - 1] = cand & ~low
        w = 0
        while (low >> w) != 1:
            w += 1
        stack[depth] = w
        used |= low
        rest[depth] = adj[w] & ~used
        depth += 1
    return False


@numba.njit(cache=True)
def _edge_closes_path(adj, u, v, k):
    """Would adding uv to the graph ``adj`` create a path on k vertices?"""
    n = adj.shape[0]
    stack = np.empty(n, np.int64)
    rest = np.empty(n, np.int64)
    vbit = np.int64(1) << v
    stack[0] = u
    used = (np.int64(1) << u)
    rest[0] = adj[u] & ~used & ~vbit
    depth = 1
    if _path_from(adj, v, used, k - depth):
        return True
    while depth > 0:
        cand = rest[depth - 1]
        if cand == 0:
            depth -= 1
            used &= ~(np.int64(1) << stack[depth])
            continue
        low = cand & -cand
        rest[depth - 1] = cand & ~low
        w = 0
        while (low >> w) != 1:
            w += 1
        stack[depth] = w
        used |= low
        rest[depth] = adj[w] & ~used & ~vbit
        depth += 1
        if _path_from(adj, v, used, k - depth):
            return True
    return False


@numba.njit(cache=True)
def _addable(adj, eu, ev, cand, k):
    out = np.zeros(len(cand), np.bool_)
    for i in range(len(cand)):
        e = cand[i]
        out[i] = not _edge_closes_path(adj, eu[e], ev[e], k)
    return out


def brute_force_ex(g: Graph, k: int) -> int:
    """Exact ex(g, P_k) by branch and bound over edge inclusion.

    At each node the remaining edges are filtered to those that can still be
    added alone (an edge that would close a P_k now will close one in every
    extension too), and a branch is cut when its edges plus those candidates
    cannot beat the best found. Requires e(g) <= 24 or N <= 10.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    N, e = g.vertex_count, g.edge_count
    if not (e <= 24 or N <= 10):
        raise InstanceTooLarge(f"brute force needs e(g) <= 24 or N <= 10 (N={N}, e={e})")
    if k <= 2:
        return 0  # P_1 or P_2 sits in any edge
    if e == 0:
        return 0
    edges = g.edges()
    used_vertices, local = np.unique(edges, return_inverse=True)
    local = local.reshape(-1, 2).astype(np.int64)
    eu, ev = local[:, 0].copy(), local[:, 1].copy()
    size = len(used_vertices)
    cap = math.floor(erdos_gallai_max(max(size, 2), k))
    best = 0

    def search(adj: np.ndarray, count: int, cand: np.ndarray) -> None:
        nonlocal best
        if len(cand):
            cand = cand[_addable(adj, eu, ev, cand, k)]
        if count + len(cand) <= best:
            return
        if len(cand) == 0:
            best = count
            return
        first, rest = cand[0], cand[1:]
        a, b = eu[first], ev[first]
        adj2 = adj.copy()
        adj2[a] |= 1 << b
        adj2[b] |= 1 << a
        search(adj2, count + 1, rest)
        if best >= cap:
            return
        search(adj, count, rest)

    search(np.zeros(size, dtype=np.int64), 0, np.arange(e, dtype=np.int64))
    return best


# ---------------------------------------------------------------- experiments

@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    N: int
    n: int
    p: float
    trials: int = 1
    seed: int = 0
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown kind {self.kind!r}; choose from {KINDS}")
        if self.trials < 1:
            raise PreconditionError("trials must be >= 1")
        unknown = set(self.overrides) - set(_OVERRIDE_KEYS)
        if unknown:
            raise PreconditionError(f"unknown overrides {sorted(unknown)}")
        if self.kind != "oracle-suite":
            if self.N < 2 or self.n < 1:
                raise PreconditionError("need N >= 2 and n >= 1")
            if not 0.0 < self.p <= 1.0:
                raise PreconditionError("need 0 < p <= 1")

    def get(self, key: str, default=None):
        if key in self.overrides and self.overrides[key] is not None:
            return _OVERRIDE_KEYS[key](self.overrides[key])
        return default


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    pass_column: str
    pass_threshold: float
    summary: dict

    @property
    def pass_rate(self) -> float:
        return self.summary["pass_rate"]

    @property
    def passed(self) -> bool:
        return self.summary["passed"]

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def summarize(columns, rows, pass_column: str, threshold: float, extra: dict | None = None) -> dict:
    """Mean, sample std, min and max of every numeric column plus the pass rate."""
    stats = {}
    for i, name in enumerate(columns):
        vals = [row[i] for row in rows]
        if name == "seed" or not all(isinstance(v, (int, float)) for v in vals):
            continue
        vals = [float(v) for v in vals]
        stats[name] = {
            "mean": statistics.fmean(vals),
            "std": statistics.stdev(vals) if len(vals) > 1 else 0.0,
            "min": min(vals),
            "max": max(vals),
        }
    flags = [bool(row[columns.index(pass_column)]) for row in rows]
    rate = sum(flags) / len(flags)
    out = {"trials": len(rows), "stats": stats, "pass_column": pass_column,
           "pass_rate": rate, "threshold": threshold}
    if extra:
        out.update(extra)
    out["passed"] = bool(rate >= threshold and out.get("aggregate_ok", True))
    return out


def _sandwich(spec: ExperimentSpec, seed: int):
    rep = regime_classify(spec.N, spec.n, spec.p)
    g = gnp(spec.N, spec.p, seed)
    witness = max(blocks_construct(g, spec.n, seed).edge_count,
                  blocks_construct(g, spec.n, seed, partition="dfs").edge_count)
    alpha = spec.get("alpha", 0.5)
    if 3 * spec.N > 8 * spec.n and spec.p < 1:
        try:
            ok = beta_window(math.ceil(3 * spec.N / 4), spec.n, spec.p, alpha).feasible
        except ValueError:
            ok = False
        if ok:
            params = DenseExtractionParams(n=spec.n, alpha=alpha, beta=spec.get("beta"))
            res = repeated_dense_construct(g, spec.n, params, spec.get("rounds"), seed,
                                           survivors="full")
            witness = max(witness, res.edge_count)
    upper = certified_upper_bound(g, spec.n)
    in_band = rep.lower_bound <= witness <= rep.upper_bound
    return (seed, witness, upper, rep.lower_bound, rep.upper_bound, in_band)


def _isolated_edges_trial(spec: ExperimentSpec, seed: int):
    g = gnp(spec.N, spec.p, seed)
    count = isolated_edge_count(g)
    return (seed, count, expected_isolated_edges(spec.N, spec.p), count >= spec.N / 15)


def _dense_extract(spec: ExperimentSpec, seed: int):
    alpha = spec.get("alpha", 0.5)
    g = HashedGnp(GnpParams(spec.N, spec.p, seed))
    beta = spec.get("beta")
    if beta is None:
        beta = beta_window(spec.N, spec.n, spec.p, alpha).beta_mid
    params = DenseExtractionParams(n=spec.n, alpha=alpha, beta=beta)
    try:
        res = dense_extract(g, np.arange(spec.N), params, seed, survivors="scan")
        internal, guarantee = res.internal_edges, res.guarantee
        ok = internal >= guarantee
    except ExtractionFailed:
        internal, guarantee, ok = 0, (1 - alpha) / 2 * beta * spec.p * spec.n ** 2, False
    rep_params = DenseExtractionParams(n=spec.n, alpha=alpha, beta=spec.get("beta"))
    rep = repeated_dense_construct(g, spec.n, rep_params, spec.get("rounds"), seed)
    omega = math.log(spec.N / spec.n) / (spec.n * spec.p)
    target = omega / math.log(omega) * spec.p * spec.n * spec.N / 75
    return (seed, internal, guarantee, ok, rep.rounds, rep.edge_count, target,
            rep.edge_count >= target, ok and rep.edge_count >= target)


def _density_threshold(spec: ExperimentSpec, seed: int):
    c = spec.get("c", 7)
    r = spec.N / (c * spec.n)
    g = gnp(spec.N, spec.p, seed)
    target = g.edge_count / r
    candidates = [("blocks-random", blocks_construct(g, spec.n, seed)),
                  ("blocks-dfs", blocks_construct(g, spec.n, seed, partition="dfs"))]
    if spec.get("rounds") is not None or spec.get("beta") is not None:
        params = DenseExtractionParams(n=spec.n, alpha=spec.get("alpha", 0.5), beta=spec.get("beta"))
        candidates.append(("dense-sets", repeated_dense_construct(
            g, spec.n, params, spec.get("rounds"), seed, survivors="full")))
    method, best = max(candidates, key=lambda kv: kv[1].edge_count)
    return (seed, g.edge_count, target, best.edge_count, method, best.edge_count > target)


def _coloring(spec: ExperimentSpec, seed: int):
    k = spec.get("k", max(1, math.ceil(2 * spec.p * spec.N)))
    g = gnp(spec.N, spec.p, seed)
    col = random_coloring(g, k, seed)
    worst = max((int(component_sizes(col.class_graph(c)).max()) for c in range(1, k + 1)),
                default=1)
    if worst <= spec.n:
        verified = True
    else:
        budget = DetectionBudget(spec.get("delta", 0.01), seed=seed)
        verified = coloring_verify(g, col, spec.n, budget).passed
    return (seed, k, g.edge_count, worst, worst <= spec.n, verified is True)


def _oracle_suite(spec: ExperimentSpec, seed: int):
    gen = rng.generator(seed, rng.PARTITION)
    N = spec.N if spec.N >= 1 else int(gen.integers(1, 8))
    g = gnp(N, spec.p, seed)
    exact = longest_path_exact(g)
    agree = True
    for k in range(2, N + 1):
        verdict = has_path(g, k, DetectionBudget(spec.get("delta", 0.01), seed=seed))
        if verdict.contains is Answer.UNKNOWN:
            continue
        agree &= (verdict.contains is Answer.YES) == (exact >= k)
    brute = longest_path_bruteforce(g) if N <= 8 else exact
    ex_ok = True
    if g.edge_count <= 12:
        kk = spec.get("k", 4)
        ex = brute_force_ex(g, kk)
        ex_ok = ex <= erdos_gallai_max(max(N, 2), kk)
    ok = agree and brute == exact and ex_ok
    return (seed, N, g.edge_count, exact, brute, agree, ex_ok, ok)


_KIND_TABLE = {
    "sandwich": (_sandwich, ("seed", "witness_edges", "certified_upper", "band_lo", "band_hi",
                             "in_band"), "in_band"),
    "prop12": (_isolated_edges_trial, ("seed", "isolated_edges", "expected", "at_least_N_over_15"),
               "at_least_N_over_15"),
    "dense-extract": (_dense_extract, ("seed", "extract_edges", "guarantee", "extract_ok", "rounds",
                                       "repeated_edges", "repeated_target", "repeated_ok",
                                       "passed"), "passed"),
    "density-threshold": (_density_threshold, ("seed", "host_edges", "target", "construct_edges",
                                               "method", "exceeds"), "exceeds"),
    "coloring": (_coloring, ("seed", "k", "host_edges", "max_mono_component", "components_ok",
                             "verified"), "components_ok"),
    "oracle-suite": (_oracle_suite, ("seed", "N", "edges", "longest_exact", "longest_brute",
                                     "has_path_agrees", "ex_consistent", "passed"), "passed"),
}


def _check_preconditions(spec: ExperimentSpec) -> None:
    if spec.kind == "sandwich":
        if regime_classify(spec.N, spec.n, spec.p).regime == OUT_OF_SCOPE:
            raise PreconditionError("sandwich: (N, n, p) lies outside every asymptotic band")
    elif spec.kind == "prop12":
        if spec.p > 1.0 / spec.N * (1 + 1e-12):
            raise PreconditionError("prop12 needs p <= 1/N")
    elif spec.kind == "dense-extract":
        alpha = spec.get("alpha", 0.5)
        if spec.get("beta") is None:
            try:
                feasible = beta_window(spec.N, spec.n, spec.p, alpha).feasible
            except ValueError as exc:
                raise PreconditionError(str(exc)) from exc
            if not feasible:
                raise PreconditionError("dense-extract: the beta window is empty at these parameters")
        DenseExtractionParams(n=spec.n, alpha=alpha, beta=spec.get("beta"))
    elif spec.kind == "density-threshold":
        c = spec.get("c", 7)
        if spec.N % (c * spec.n):
            raise PreconditionError("density-threshold needs N = c r n")
    elif spec.kind == "coloring":
        if spec.n < 2:
            raise PreconditionError("coloring needs n >= 2")
    elif spec.kind == "oracle-suite":
        if spec.N > 16:
            raise PreconditionError("oracle-suite graphs must have at most 16 vertices")


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Run ``spec.trials`` independent trials; trial t uses seed derive_seed(spec.seed, t)."""
    try:
        _check_preconditions(spec)
    except PreconditionError:
        raise
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    fn, columns, pass_column = _KIND_TABLE[spec.kind]
    rows = tuple(fn(spec, rng.derive_seed(spec.seed, t)) for t in range(spec.trials))
    threshold = spec.get("threshold", DEFAULT_PASS_RATE[spec.kind])
    extra = {}
    if spec.kind == "prop12":
        mean = statistics.fmean(r[1] for r in rows)
        expected = expected_isolated_edges(spec.N, spec.p)
        extra = {"mean_relative_error": abs(mean - expected) / expected,
                 "aggregate_ok": abs(mean - expected) <= 0.05 * expected}
    if spec.kind == "sandwich":
        extra = {"witness_le_upper": all(r[1] <= r[2] for r in rows)}
        extra["aggregate_ok"] = extra["witness_le_upper"]
    summary = summarize(columns, rows, pass_column, threshold, extra)
    return ExperimentResult(spec, columns, rows, pass_column, threshold, summary)


# ---------------------------------------------------------------- reporting

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit_report(res: ExperimentResult, path) -> tuple[Path, Path, Path]:
    """Write rows as CSV, a key-value summary sidecar and a long-format CSV.

    Files: ``path``, ``<stem>.summary.txt`` and ``<stem>.long.csv`` next to it.
    """
    path = Path(path)
    if not res.rows:
        raise PreconditionError("nothing to report: the result has no rows")
    summary_path = path.with_name(path.stem + ".summary.txt")
    long_path = path.with_name(path.stem + ".long.csv")
    lines = [",".join(res.columns)]
    lines += [",".join(_fmt(v) for v in row) for row in res.rows]
    long_lines = ["x,y,series,trial"]
    x = _fmt(float(res.spec.p))
    for t, row in enumerate(res.rows):
        for name, v in zip(res.columns, row):
            if name == "seed" or isinstance(v, str):
                continue
            long_lines.append(f"{x},{_fmt(float(v))},{name},{t}")
    s = res.summary
    side = [f"kind = {res.spec.kind}", f"N = {res.spec.N}", f"n = {res.spec.n}",
            f"p = {res.spec.p!r}", f"trials = {s['trials']}", f"seed = {res.spec.seed}"]
    for key, val in sorted(res.spec.overrides.items()):
        side.append(f"override.{key} = {val}")
    for name, st in s["stats"].items():
        for stat in ("mean", "std", "min", "max"):
            side.append(f"{name}.{stat} = {st[stat]!r}")
    for key in sorted(k for k in s if k not in ("stats",)):
        side.append(f"{key} = {s[key]!r}" if isinstance(s[key], float) else f"{key} = {s[key]}")
    try:
        path.write_text("\n".join(lines) + "\n")
        summary_path.write_text("\n".join(side) + "\n")
        long_path.write_text("\n".join(long_lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    return path, summary_path, long_path
