import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pathfree.graph import Graph, block_union, cycle_graph, disjoint_union, gnp, path_graph
from pathfree.paths import (Answer, Certificate, DetectionBudget, PathVerdict, check_witness,
                            color_coding_rounds, color_coding_search, has_path,
                            longest_path_bruteforce, longest_path_exact)


def longest_by_search(g: Graph) -> int:
    """Test-local oracle: extend every simple path vertex by vertex."""
    if g.vertex_count == 0:
        return 0
    nbrs = [set(g.neighbors(v).tolist()) for v in range(g.vertex_count)]
    best = 1
    frontier = [(v,) for v in range(g.vertex_count)]
    while frontier:
        best = max(best, len(frontier[0]))
        nxt = []
        for path in frontier:
            for w in nbrs[path[-1]]:
                if w not in path:
                    nxt.append(path + (w,))
        frontier = nxt
    return best


@pytest.mark.parametrize("g,expected", [
    (path_graph(5), 5), (Graph.complete(4), 4), (cycle_graph(5), 5),
    (Graph.empty(3), 1), (Graph.empty(0), 0),
])
def test_longest_path_examples(g, expected):
    assert longest_path_exact(g) == expected


def test_has_path_examples():
    tri = Graph.complete(3)
    v = has_path(disjoint_union(tri, tri), 4)
    assert v.contains is Answer.NO and v.certificate is Certificate.COMPONENT_SIZE
    v = has_path(path_graph(10), 10)
    assert v.contains is Answer.YES
    assert sorted(v.witness) == list(range(10))
    assert check_witness(path_graph(10), v, 10)


def test_color_coding_rounds_examples():
    assert color_coding_rounds(1, 0.5) == 1
    assert color_coding_rounds(2, 0.5) == 1
    expected = math.ceil(math.log(0.01) / math.log(1 - math.factorial(8) / 8**8))
    assert color_coding_rounds(8, 0.01) == expected == 1914


def test_color_coding_rounds_monotone():
    for delta in (0.5, 0.1, 0.01):
        ts = [color_coding_rounds(k, delta) for k in range(1, 12)]
        assert ts == sorted(ts)
    for k in (3, 6, 9):
        ts = [color_coding_rounds(k, d) for d in (0.5, 0.1, 0.01, 0.001)]
        assert ts == sorted(ts)


def test_no_verdict_requires_exact_certificate():
    with pytest.raises(ValueError):
        PathVerdict(Answer.NO, certificate=Certificate.COLOR_CODING_EXHAUSTED)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 7), st.floats(0.0, 1.0), st.integers(0, 2**32))
def test_exact_matches_oracles_small(N, p, seed):
    g = gnp(max(N, 1), p, seed) if N else Graph.empty(0)
    expected = longest_by_search(g)
    assert longest_path_exact(g) == expected
    assert longest_path_bruteforce(g) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.floats(0.05, 0.6))
def test_has_path_agrees_and_is_monotone(seed, p):
    g = gnp(16, p, seed)
    exact = longest_path_exact(g)
    answers = []
    for k in range(1, 17):
        v = has_path(g, k, DetectionBudget(seed=seed))
        assert v.contains is not Answer.UNKNOWN  # every component is within the exact limit
        assert (v.contains is Answer.YES) == (exact >= k)
        assert check_witness(g, v, k)
        answers.append(v.contains is Answer.YES)
    # once NO, NO for every larger k
    assert answers == sorted(answers, reverse=True)


def test_component_certificate_on_block_graphs():
    gen = np.random.default_rng(0)
    for t in range(1000):
        n = int(gen.integers(2, 12))
        g = block_union(int(gen.integers(n, 80)), n, float(gen.uniform(0.2, 1.0)), t)
        v = has_path(g, n + 1)
        assert v.contains is Answer.NO and v.certificate is Certificate.COMPONENT_SIZE


def test_color_coding_finds_long_path_in_large_component():
    # one 40-vertex component: past the exact limit, so no DP rung
    g = gnp(40, 0.3, 3)
    v = has_path(g, 8, DetectionBudget(delta=0.01, seed=1))
    assert v.contains is Answer.YES and check_witness(g, v, 8)
    path = color_coding_search(g, 6, rounds=200, seed=2)
    assert path is not None and check_witness(g, PathVerdict(Answer.YES, path), 6)


def test_unknown_is_not_no():
    # giant component past the exact limit; one color-coding round cannot rule P_30 out
    g = gnp(60, 0.06, 4)
    k = 30
    v = has_path(g, k, DetectionBudget(delta=0.5, max_rounds=1, seed=0))
    assert v.contains in (Answer.YES, Answer.UNKNOWN)
    if v.contains is Answer.UNKNOWN:
        assert v.witness is None


def test_bruteforce_permutation_definition():
    g = cycle_graph(6)
    best = 0
    for r in range(1, 7):
        for perm in permutations(range(6), r):
            if all(g.has_edge(a, b) for a, b in zip(perm, perm[1:])):
                best = max(best, r)
    assert longest_path_bruteforce(g) == best == 6
