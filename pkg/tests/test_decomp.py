import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pathfree.construct import blocks_construct
from pathfree.decomp import (Decomposition, Group, StackOverflowWitness, dense_pair_budget,
                             sparse_pair_budget, certified_upper_bound, decomposition_verify,
                             dfs_decompose, pair_density, sample_pair_max)
from pathfree.graph import (Graph, block_union, disjoint_union, gnp, is_path_in, path_graph)
from pathfree.harness import brute_force_ex

TRI = Graph.complete(3)


def test_two_triangles():
    d = dfs_decompose(disjoint_union(TRI, TRI), 3)
    assert len(d.groups) == 2
    for grp, base in zip(d.groups, (0, 3)):
        assert sorted(grp.S.tolist()) == [base, base + 1, base + 2]
        assert len(grp.T) == 0 and len(grp.F) == 3


def test_empty_graph_groups():
    d = dfs_decompose(Graph.empty(9), 3)
    assert len(d.groups) == 3 and all(len(g.F) == 0 for g in d.groups)


def test_p3_single_group():
    d = dfs_decompose(path_graph(3), 3)
    assert len(d.groups) == 1 and len(d.groups[0].F) == 2 and len(d.groups[0].T) == 0


def test_verify_rejects_broken_decompositions():
    h = block_union(200, 8, 0.6, 1)
    d = dfs_decompose(h, 8)
    assert decomposition_verify(d, h)
    i = next(i for i, g in enumerate(d.groups) if len(g.F))
    dropped = list(d.groups)
    dropped[i] = Group(d.groups[i].S, d.groups[i].T, d.groups[i].F[1:])
    assert not decomposition_verify(Decomposition(8, 200, tuple(dropped)), h)
    overlap = list(d.groups)
    overlap[i] = Group(d.groups[i].S, np.append(d.groups[i].T, d.groups[i].S[0]), d.groups[i].F)
    assert not decomposition_verify(Decomposition(8, 200, tuple(overlap)), h)


def test_stack_overflow_witness_is_a_path():
    for n in range(1, 12):
        g = path_graph(n + 1)
        with pytest.raises(StackOverflowWitness) as info:
            dfs_decompose(g, n)
        assert len(info.value.path) == n + 1 and is_path_in(g, info.value.path)
    g = gnp(200, 0.05, 2)
    with pytest.raises(StackOverflowWitness) as info:
        dfs_decompose(g, 10)
    assert len(info.value.path) == 11 and is_path_in(g, info.value.path)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 400), st.integers(1, 30), st.floats(0.1, 1.0), st.integers(0, 2**32))
def test_decomposition_roundtrip(N, n, q, seed):
    h = block_union(N, n, q, seed)
    d = dfs_decompose(h, n)
    assert len(d.groups) == math.ceil(N / n)
    assert decomposition_verify(d, h)
    back = Decomposition.from_text(d.to_text(), n, N)
    assert decomposition_verify(back, h)
    assert back.to_text() == d.to_text()


def test_construct_outputs_decompose():
    for s in range(20):
        g = gnp(300, 0.08, s)
        for partition in ("random", "dfs"):
            h = blocks_construct(g, 12, s, partition=partition).graph()
            assert decomposition_verify(dfs_decompose(h, 12), h)


def test_certified_upper_bound_examples():
    assert certified_upper_bound(Graph.complete(4), 2) == 6
    assert certified_upper_bound(Graph.empty(7), 3) == 0
    assert certified_upper_bound(disjoint_union(TRI, TRI), 3) == 6
    assert brute_force_ex(disjoint_union(TRI, TRI), 4) == 6


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.floats(0.2, 0.9), st.integers(1, 5), st.integers(0, 2**32))
def test_certified_upper_dominates_exact(N, p, n, seed):
    g = gnp(N, p, seed)
    assert certified_upper_bound(g, n) >= brute_force_ex(g, n + 1)


def test_dense_pair_budget_examples():
    assert dense_pair_budget(10, 0.1) == 180
    assert dense_pair_budget(17, 0.0) == 0
    assert dense_pair_budget(30, 0.05) == 810


def test_sparse_pair_budget_examples():
    # values from a 50-digit evaluation: 267.893..., 219.566...
    assert sparse_pair_budget(10 * math.exp(6), 10, 0.1) == 268
    assert sparse_pair_budget(3000, 30, 0.001) == 220
    with pytest.raises(ValueError):
        sparse_pair_budget(10 * math.exp(3), 10, 0.3)  # np = log(N/n)


def test_pair_density_counts():
    g = Graph.complete(6)
    assert pair_density(g, [0, 1, 2], [3, 4, 5]).edges == 3 + 9


def test_sampled_pairs_within_budget():
    # dense regime: the largest sampled e(S) + e(S, T) stays under 18 n^2 p
    N, n, p = 3000, 30, 0.05
    hits = sum(sample_pair_max(gnp(N, p, s), n, 50, s) <= dense_pair_budget(n, p) for s in range(20))
    assert hits >= 19
