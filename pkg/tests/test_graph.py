import io
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pathfree import rng
from pathfree.bounds import chernoff_lower_tail
from pathfree.graph import (EdgeListError, GnpParams, Graph, HashedGnp, block_union,
                            component_sizes, connected_components, cycle_graph, disjoint_union,
                            dfs_forest, from_edge_list, gnp, gnp_generate, induced_subgraph,
                            is_path_in, isolated_edge_count, pair_index, pair_unrank, path_graph,
                            read_edge_list, write_edge_list)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges().tolist())
    return h


def test_mix64_matches_reference_splitmix():
    # reference SplitMix64 outputs for state 0 (first three draws)
    state, outs = 0, []
    for _ in range(3):
        state = (state + rng.GOLDEN_GAMMA) & rng.MASK64
        outs.append(rng.mix64(state))
    assert outs == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    arr = rng.mix64_array(np.array([rng.GOLDEN_GAMMA], dtype=np.uint64))
    assert int(arr[0]) == outs[0]


def test_counter_uniform_is_positional():
    key = rng.stream_key(7, rng.EDGES)
    whole = rng.counter_uniform(key, np.arange(100))
    assert np.array_equal(whole[[3, 50, 99]], rng.counter_uniform(key, [3, 50, 99]))
    assert np.all((whole >= 0) & (whole < 1))
    assert rng.counter_uniform(key, np.zeros((2, 3), dtype=np.int64)).shape == (2, 3)


def test_derive_seed_distinct():
    seeds = {rng.derive_seed(123, t) for t in range(1000)}
    assert len(seeds) == 1000


@given(st.integers(0, 10**6))
def test_pair_rank_roundtrip(idx):
    lo, hi = pair_unrank(np.array([idx]))
    assert lo[0] < hi[0]
    assert pair_index(lo, hi)[0] == idx


@pytest.mark.parametrize("p,expected", [(0.0, 0), (1.0, 45)])
def test_gnp_extremes(p, expected):
    g = gnp_generate(GnpParams(10, p, 1))
    assert g.edge_count == expected


def test_gnp_edge_count_window():
    # Chernoff window around 2475 with delta = 0.15
    assert chernoff_lower_tail(2475, 0.15) < 1e-11
    counts = [gnp(100, 0.5, s).edge_count for s in range(100)]
    assert all(2100 <= c <= 2850 for c in counts)


@pytest.mark.parametrize("p", [0.3, 0.01])
def test_gnp_deterministic_and_degree_sum(p):
    a, b = gnp(300, p, 5), gnp(300, p, 5)
    assert np.array_equal(a.edges(), b.edges())
    assert a.degrees.sum() == 2 * a.edge_count
    assert not np.array_equal(a.edges(), gnp(300, p, 6).edges())


def test_skip_sampler_rate():
    # mean edge count of the geometric-skip sampler over seeds
    N, p = 2000, 0.002
    counts = [gnp(N, p, s).edge_count for s in range(40)]
    mu = math.comb(N, 2) * p
    se = math.sqrt(mu * (1 - p) / len(counts))
    assert abs(np.mean(counts) - mu) < 5 * se


def test_hashed_matches_dense():
    params = GnpParams(200, 0.3, 11)
    lazy = HashedGnp(params)
    dense = gnp_generate(params)
    assert np.array_equal(lazy.materialize().edges(), dense.edges())
    e = dense.edges()
    assert lazy.has_edges(e[:, 0], e[:, 1]).all()
    cand, part = np.arange(50), np.arange(100, 130)
    assert np.array_equal(lazy.count_into(cand, part), dense.count_into(cand, part))
    vs = np.arange(0, 200, 3)
    assert np.array_equal(np.sort(lazy.induced_edges(vs), axis=0),
                          np.sort(dense.induced_edges(vs), axis=0))


def test_induced_subgraph_examples():
    k3, _ = induced_subgraph(Graph.complete(4), [0, 1, 2])
    assert k3.vertex_count == 3 and k3.edge_count == 3
    empty, _ = induced_subgraph(gnp(10, 0.5, 0), [])
    assert empty.vertex_count == 0 and empty.edge_count == 0
    one, _ = induced_subgraph(cycle_graph(5), [0, 1, 3])
    assert one.edge_count == 1
    g = gnp(40, 0.2, 2)
    same, _ = induced_subgraph(g, range(40))
    assert np.array_equal(same.edges(), g.edges())
    with pytest.raises(IndexError):
        induced_subgraph(g, [0, 40])


def test_components_examples():
    tri = Graph.complete(3)
    assert sorted(map(len, connected_components(disjoint_union(tri, tri)))) == [3, 3]
    assert [len(c) for c in connected_components(Graph.empty(5))] == [1] * 5
    assert [len(c) for c in connected_components(path_graph(5))] == [5]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 60), st.floats(0.0, 0.2), st.integers(0, 2**32))
def test_components_match_networkx(N, p, seed):
    g = gnp(N, p, seed)
    ours = sorted(sorted(c.tolist()) for c in connected_components(g))
    theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs
    assert sorted(component_sizes(g).tolist()) == sorted(map(len, theirs))


def test_isolated_edge_examples():
    assert isolated_edge_count(Graph.complete(2)) == 1
    assert isolated_edge_count(Graph.complete(3)) == 0
    assert isolated_edge_count(disjoint_union(path_graph(3), Graph.complete(2))) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 80), st.floats(0.0, 0.1), st.integers(0, 2**32))
def test_isolated_edges_match_networkx(N, p, seed):
    g = gnp(N, p, seed)
    h = to_nx(g)
    expected = sum(1 for c in nx.connected_components(h) if len(c) == 2)
    assert isolated_edge_count(g) == expected


def test_block_union_components_bounded():
    for s in range(20):
        g = block_union(500, 17, 0.4, s)
        assert component_sizes(g).max() <= 17


def test_dfs_forest_order_and_witness():
    g = path_graph(6)
    f = dfs_forest(g)
    assert f.order.tolist() == list(range(6))
    assert f.parent.tolist() == [-1, 0, 1, 2, 3, 4]
    f = dfs_forest(g, limit=3)
    assert len(f.witness) == 4 and is_path_in(g, f.witness)


def test_edge_list_roundtrip_and_rejects():
    g = gnp(30, 0.2, 4)
    buf = io.StringIO()
    write_edge_list(g, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == f"30 {g.edge_count}"
    back = read_edge_list(io.StringIO(text))
    assert np.array_equal(back.edges(), g.edges())
    for bad in ["3 1\n0 0\n", "3 2\n0 1\n1 0\n", "3 1\n0 3\n", "3 2\n0 1\n"]:
        with pytest.raises(EdgeListError):
            read_edge_list(io.StringIO(bad))


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        from_edge_list(3, [(0, 0)])
    with pytest.raises(ValueError):
        from_edge_list(3, [(0, 1), (1, 0)])
