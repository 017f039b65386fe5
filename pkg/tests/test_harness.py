import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pathfree.bounds import erdos_gallai_max
from pathfree.cli import main, read_config
from pathfree.graph import Graph, gnp, read_edge_list
from pathfree.harness import (ExperimentSpec, InstanceTooLarge, PreconditionError,
                              brute_force_ex, emit_report, run_experiment, summarize)
from pathfree.paths import longest_path_exact


def ex_by_enumeration(g: Graph, k: int) -> int:
    """Test-local oracle: try every edge subset, largest first."""
    e = g.edges()
    for size in range(len(e), -1, -1):
        for pick in itertools.combinations(range(len(e)), size):
            h = Graph.from_edges(g.vertex_count, e[list(pick)], check=False)
            if longest_path_exact(h) < k:
                return size
    return 0


@pytest.mark.parametrize("N,k,expected", [(4, 3, 2), (6, 4, 6), (6, 3, 3)])
def test_brute_force_examples(N, k, expected):
    assert brute_force_ex(Graph.complete(N), k) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.floats(0.2, 0.8), st.integers(3, 6), st.integers(0, 2**32))
def test_brute_force_matches_enumeration(N, p, k, seed):
    g = gnp(N, p, seed)
    if g.edge_count > 11:
        return
    assert brute_force_ex(g, k) == ex_by_enumeration(g, k)


def test_brute_force_erdos_gallai_equality():
    for N in range(2, 9):
        for k in range(3, 6):
            if N % (k - 1) == 0:
                assert brute_force_ex(Graph.complete(N), k) == erdos_gallai_max(N, k)


def test_brute_force_rejects_large():
    with pytest.raises(InstanceTooLarge):
        brute_force_ex(Graph.complete(11), 4)
    assert brute_force_ex(gnp(200, 0.0005, 1), 4) >= 0  # few edges, many vertices


def test_spec_validation():
    with pytest.raises(PreconditionError):
        ExperimentSpec("nope", 10, 2, 0.5)
    with pytest.raises(PreconditionError):
        ExperimentSpec("sandwich", 10, 2, 0.5, trials=0)
    with pytest.raises(PreconditionError):
        ExperimentSpec("sandwich", 10, 2, 0.5, overrides={"gamma": 1})
    with pytest.raises(PreconditionError):
        run_experiment(ExperimentSpec("prop12", 1000, 2, 0.5))
    with pytest.raises(PreconditionError):
        run_experiment(ExperimentSpec("sandwich", 10, 5, 0.5))  # N < 3n
    with pytest.raises(PreconditionError):
        run_experiment(ExperimentSpec("dense-extract", 100, 10, 0.01))  # empty window


def test_sandwich_rows_and_soundness():
    res = run_experiment(ExperimentSpec("sandwich", 600, 12, 0.1, trials=5, seed=3))
    assert res.columns == ("seed", "witness_edges", "certified_upper", "band_lo", "band_hi",
                           "in_band")
    assert len(res.rows) == 5
    assert all(r[1] <= r[2] for r in res.rows)
    assert res.summary["stats"]["witness_edges"]["min"] == min(res.column("witness_edges"))


def test_summary_recomputable():
    res = run_experiment(ExperimentSpec("coloring", 2000, 40, 0.001, trials=4, seed=1))
    again = summarize(res.columns, res.rows, res.pass_column, res.pass_threshold)
    assert again["stats"] == res.summary["stats"]
    assert again["pass_rate"] == res.pass_rate


def test_reports_are_byte_identical(tmp_path):
    spec = ExperimentSpec("prop12", 5000, 2, 1 / 5000, trials=6, seed=11)
    a = emit_report(run_experiment(spec), tmp_path / "a.csv")
    b = emit_report(run_experiment(spec), tmp_path / "b.csv")
    for x, y in zip(a, b):
        assert x.read_bytes() == y.read_bytes()
    long = a[2].read_text().splitlines()
    assert long[0] == "x,y,series,trial" and len(long) == 1 + 6 * 3


def test_sandwich_report_header(tmp_path):
    res = run_experiment(ExperimentSpec("sandwich", 300, 10, 0.2, trials=2))
    path, summary, _ = emit_report(res, tmp_path / "s.csv")
    assert path.read_text().splitlines()[0] == \
        "seed,witness_edges,certified_upper,band_lo,band_hi,in_band"
    assert "pass_rate" in summary.read_text()


def test_oracle_suite_runs():
    res = run_experiment(ExperimentSpec("oracle-suite", 0, 2, 0.5, trials=20, seed=2))
    assert res.passed


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nkind = prop12\nN = 2000\nn = 2\np = 0.0005\ntrials = 2\n")
    assert read_config(cfg)["N"] == 2000
    out = tmp_path / "r.csv"
    assert main(["experiment", "--config", str(cfg), "--trials", "3", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1 + 3
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert main(["experiment", "--config", str(bad)]) == 2


def test_cli_subcommands(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert main(["gen", "--N", "30", "--p", "0.2", "--seed", "1", "--out", str(g)]) == 0
    assert read_edge_list(g).vertex_count == 30
    assert main(["bounds", "--N", "3000", "--n", "30", "--p", "0.05"]) == 0
    assert "regime = T1.3-i" in capsys.readouterr().out
    h = tmp_path / "h.txt"
    assert main(["construct", "--graph", str(g), "--n", "4", "--kind", "blocks", "--out", str(h)]) == 0
    assert main(["decompose", "--graph", str(h), "--n", "4", "--out", str(tmp_path / "d.txt")]) == 0
    assert main(["decompose", "--graph", str(g), "--n", "2"]) == 2
    assert main(["color", "--N", "8", "--n", "4", "--kind", "affine",
                 "--out", str(tmp_path / "c.csv")]) == 0
    assert main(["color", "--graph", str(g), "--n", "2", "--k", "1"]) == 1
    assert main(["color", "--N", "60", "--p", "0.3", "--n", "20", "--k", "1", "--delta", "0.5",
                 "--out", str(tmp_path / "u.csv")]) in (1, 3)
    assert main(["oracle", "--N", "6", "--k", "4"]) == 0
    assert "ex = 6" in capsys.readouterr().out
    assert main(["bounds", "--N", "3000", "--n", "30"]) == 2
