"""Command line front end: ``python -m pathfree <subcommand> ...``.

Exit codes: 0 success, 1 verification found a violation, 2 precondition
violation, 3 inconclusive verification.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds, coloring, construct, decomp, graph, harness
from .paths import DetectionBudget

EXIT_OK, EXIT_VIOLATION, EXIT_PRECONDITION, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_CASTS = {"N": int, "n": int, "p": float, "seed": int, "trials": int, "kind": str, "out": str,
          "alpha": float, "beta": float, "rounds": int, "k": int, "delta": float, "graph": str,
          "c": int}


def read_config(path) -> dict:
    """Plain ``key = value`` lines; '#' starts a comment."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CASTS:
            raise ValueError(f"{path}: unknown key {key!r}")
        out[key] = _CASTS[key](value)
    return out


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--N", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--kind")
    common.add_argument("--out")
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--rounds", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--delta", type=float)
    common.add_argument("--c", type=int)
    common.add_argument("--graph", help="edge-list file used instead of sampling G(N, p)")

    top = argparse.ArgumentParser(prog="pathfree",
                                  description="Path-free subgraphs of random graphs.")
    sub = top.add_subparsers(dest="command", required=True)
    sub.add_parser("gen", parents=[common], help="sample G(N, p) as an edge list")
    sub.add_parser("bounds", parents=[common], help="regime, band and beta window")
    sub.add_parser("decompose", parents=[common], help="DFS decomposition of a P_{n+1}-free graph")
    sub.add_parser("construct", parents=[common],
                   help="P_{n+1}-free subgraph (--kind blocks|blocks-dfs|isolated|dense)")
    sub.add_parser("color", parents=[common],
                   help="edge coloring without monochromatic P_{n+1} (--kind random|block|affine)")
    sub.add_parser("experiment", parents=[common], help="run an experiment and write CSV reports")
    sub.add_parser("oracle", parents=[common], help="exact ex(g, P_k) on a tiny graph")
    return top


def _settings(args) -> dict:
    cfg = read_config(args.config) if args.config else {}
    for key in _CASTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg.setdefault("seed", 0)
    return cfg


def _need(cfg: dict, *keys: str) -> None:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise ValueError("missing " + ", ".join("--" + k for k in missing))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _host(cfg: dict) -> graph.Graph:
    if cfg.get("graph"):
        return graph.read_edge_list(cfg["graph"])
    _need(cfg, "N", "p")
    return graph.gnp(cfg["N"], cfg["p"], cfg["seed"])


def _cmd_gen(cfg: dict) -> int:
    _need(cfg, "N", "p")
    g = graph.gnp(cfg["N"], cfg["p"], cfg["seed"])
    if cfg.get("out"):
        graph.write_edge_list(g, cfg["out"])
    else:
        graph.write_edge_list(g, sys.stdout)
    return EXIT_OK


def _cmd_bounds(cfg: dict) -> int:
    _need(cfg, "N", "n", "p")
    N, n, p = cfg["N"], cfg["n"], cfg["p"]
    rep = bounds.regime_classify(N, n, p)
    fields = {"N": N, "n": n, "p": p, "regime": rep.regime, "omega": rep.omega,
              "lower_bound": rep.lower_bound, "upper_bound": rep.upper_bound, "notes": rep.notes}
    alpha = cfg.get("alpha", 0.5)
    if N > 2 * n and p < 1:
        w = bounds.beta_window(N, n, p, alpha)
        fields.update({"alpha": alpha, "window_lo": w.lo, "window_hi": w.hi,
                       "beta_lo": w.beta_lo, "beta_hi": w.beta_hi, "feasible": w.feasible,
                       "beta_mid": w.beta_mid if w.feasible else float("nan")})
    sys.stdout.write("".join(f"{k} = {v}\n" for k, v in fields.items()))
    if cfg.get("out"):
        header = ",".join(fields)
        row = ",".join(str(v).replace(",", ";") for v in fields.values())
        Path(cfg["out"]).write_text(header + "\n" + row + "\n")
    return EXIT_OK


def _cmd_decompose(cfg: dict) -> int:
    _need(cfg, "n")
    h = _host(cfg)
    if not cfg.get("graph"):
        h = construct.blocks_construct(h, cfg["n"], cfg["seed"]).graph()
    try:
        d = decomp.dfs_decompose(h, cfg["n"])
    except decomp.StackOverflowWitness as exc:
        sys.stderr.write(f"graph contains P_{cfg['n'] + 1}: {' '.join(map(str, exc.path))}\n")
        return EXIT_PRECONDITION
    if not decomp.decomposition_verify(d, h):
        raise AssertionError("decomposition failed its own verification")
    _emit(d.to_text(), cfg.get("out"))
    return EXIT_OK


def _cmd_construct(cfg: dict) -> int:
    _need(cfg, "n")
    n, kind = cfg["n"], cfg.get("kind", "blocks")
    g = _host(cfg)
    if kind == "blocks":
        res = construct.blocks_construct(g, n, cfg["seed"])
    elif kind == "blocks-dfs":
        res = construct.blocks_construct(g, n, cfg["seed"], partition="dfs")
    elif kind == "isolated":
        res = construct.isolated_edge_construct(g, n)
    elif kind == "dense":
        p = cfg.get("p")
        if p is None:
            raise ValueError("dense construction needs --p")
        params = construct.DenseExtractionParams(n=n, alpha=cfg.get("alpha", 0.5),
                                                 beta=cfg.get("beta"))
        res = construct.repeated_dense_construct(g, n, params, cfg.get("rounds"), cfg["seed"],
                                                 p=p, survivors="full")
    else:
        raise ValueError(f"unknown construction {kind!r}")
    _emit(res.to_text(), cfg.get("out"))
    sys.stderr.write(f"edges = {res.edge_count}, max component = {res.max_component}\n")
    return EXIT_OK


def _cmd_color(cfg: dict) -> int:
    _need(cfg, "n")
    n, kind = cfg["n"], cfg.get("kind", "random")
    if kind == "affine" and not cfg.get("graph") and cfg.get("p") is None:
        _need(cfg, "N")
        g = graph.Graph.complete(cfg["N"])
    else:
        g = _host(cfg)
    if kind == "affine":
        col = coloring.affine_coloring(g.vertex_count, n, cfg["seed"], host=g)
    elif kind == "block":
        col = coloring.block_coloring(g, n, cfg["seed"])
    elif kind == "random":
        k = cfg.get("k")
        if k is None:
            _need(cfg, "p")
            k = max(1, math.ceil(2 * cfg["p"] * g.vertex_count))
        col = coloring.random_coloring(g, k, cfg["seed"])
    else:
        raise ValueError(f"unknown coloring {kind!r}")
    _emit(col.to_csv(), cfg.get("out"))
    check = coloring.coloring_verify(g, col, n, DetectionBudget(cfg.get("delta", 0.01),
                                                                seed=cfg["seed"]))
    sys.stderr.write(f"colors = {col.k}, max mono component = {check.max_component}, "
                     f"verified = {check.passed}\n")
    if check.passed is None:
        return EXIT_INCONCLUSIVE
    if not check.passed:
        sys.stderr.write(f"monochromatic path in color {check.witness_color}: "
                         f"{' '.join(map(str, check.witness))}\n")
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_experiment(cfg: dict) -> int:
    _need(cfg, "kind", "N", "n", "p")
    overrides = {k: cfg[k] for k in ("alpha", "beta", "rounds", "k", "delta", "c") if k in cfg}
    spec = harness.ExperimentSpec(cfg["kind"], cfg["N"], cfg["n"], cfg["p"],
                                  cfg.get("trials", 1), cfg["seed"], overrides)
    res = harness.run_experiment(spec)
    out = cfg.get("out") or f"{spec.kind}.csv"
    paths = harness.emit_report(res, out)
    sys.stdout.write(f"pass rate {res.pass_rate:.3f} (threshold {res.pass_threshold}); "
                     f"passed = {res.passed}\n")
    sys.stdout.write("wrote " + ", ".join(map(str, paths)) + "\n")
    return EXIT_OK


def _cmd_oracle(cfg: dict) -> int:
    _need(cfg, "k")
    if cfg.get("graph") or cfg.get("p") is not None:
        g = _host(cfg)
    else:
        _need(cfg, "N")
        g = graph.Graph.complete(cfg["N"])
    value = harness.brute_force_ex(g, cfg["k"])
    sys.stdout.write(f"N = {g.vertex_count}\nedges = {g.edge_count}\nk = {cfg['k']}\n"
                     f"ex = {value}\n"
                     f"erdos_gallai_max = {bounds.erdos_gallai_max(max(g.vertex_count, 2), cfg['k'])}\n")
    return EXIT_OK


_COMMANDS = {"gen": _cmd_gen, "bounds": _cmd_bounds, "decompose": _cmd_decompose,
             "construct": _cmd_construct, "color": _cmd_color, "experiment": _cmd_experiment,
             "oracle": _cmd_oracle}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _settings(args)
        return _COMMANDS[args.command](cfg)
    except (ValueError, graph.EdgeListError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
