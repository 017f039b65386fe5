import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from pathfree import bounds
from pathfree.bounds import (beta_solve, beta_window, chernoff_lower_tail, coloring_bounds,
                             erdos_gallai_max, expected_isolated_edges, regime_classify,
                             two_beta_log_beta)

mp.dps = 50


def iso_oracle(N, p):
    N, p = mpf(N), mpf(p)
    return N * (N - 1) / 2 * p * (1 - p) ** (2 * N - 4)


def test_beta_solve_examples():
    assert beta_solve(0.0) == 1.0
    assert beta_solve(2 * math.e) == pytest.approx(math.e, rel=1e-12)
    for beta in (1.5, 2.0, 5.0, 50.0):
        assert abs(beta_solve(two_beta_log_beta(beta)) - beta) <= 1e-9 * beta
    with pytest.raises(ValueError):
        beta_solve(-1.0)


@given(st.floats(1.0, 1e6))
def test_beta_roundtrip_property(beta):
    assert abs(beta_solve(two_beta_log_beta(beta)) - beta) <= 1e-9 * beta


def test_beta_window_desk_set():
    N, n = 65536, 64
    r = N / n
    p = math.log(r) / (n * r ** 0.2)
    w = beta_window(N, n, p, 0.5)
    assert w.feasible
    assert w.lo == pytest.approx(2 * math.log(2 * math.e), rel=1e-12)
    # the log(r) / (np) side is the binding one here
    assert w.hi == pytest.approx((math.log(r) - math.log(0.5) - 2 * math.log(2)) / (n * p), rel=1e-12)
    assert 1 < w.beta_lo <= w.beta_mid <= w.beta_hi


def test_beta_window_dense_limit_gives_inverse_p():
    # (2/p) log(1/p) binds, and 2 beta log beta = (2/p) log(1/p) at beta = 1/p
    p = 0.5
    w = beta_window(1e12, 10, p, 0.5)
    assert w.hi == pytest.approx(2 / p * math.log(1 / p))
    assert w.beta_hi == pytest.approx(1 / p, rel=1e-9)


def test_beta_window_infeasible():
    w = beta_window(100, 10, 0.01, 0.5)
    assert not w.feasible
    with pytest.raises(ValueError):
        _ = w.beta_mid


def test_regime_dense_example():
    rep = regime_classify(3000, 30, 0.05)
    assert rep.regime == bounds.DENSE_BAND
    assert rep.lower_bound == pytest.approx(1125)
    assert rep.upper_bound == pytest.approx(81000)


def test_regime_sparse_example():
    rep = regime_classify(3000, 30, 0.001)
    assert rep.regime == bounds.SPARSE_BAND
    omega = mp.log(100) / mpf("0.03")
    core = omega / mp.log(omega) * mpf("0.001") * 30 * 3000
    assert rep.omega == pytest.approx(float(omega), rel=1e-12)
    assert rep.lower_bound == pytest.approx(float(core / 75), rel=1e-12)
    assert rep.upper_bound == pytest.approx(float(8 * core), rel=1e-12)


def test_regime_subcritical_example():
    rep = regime_classify(10**5, 10, 1e-5)
    assert rep.regime == bounds.SUBCRITICAL
    assert "≥ N/15" in rep.notes


def test_regime_boundary_goes_to_case_one():
    N, n = 3000, 30
    threshold = math.log(N / n) / (6 * n)
    assert regime_classify(N, n, threshold).regime == bounds.DENSE_BAND
    assert regime_classify(N, n, threshold * (1 - 1e-9)).regime == bounds.SPARSE_BAND
    N, n = 10**7, 5
    threshold = math.exp(-2 * math.log(N) / (5 * n))
    assert regime_classify(N, n, threshold).regime == bounds.HUGE_N_DENSE_BAND
    assert regime_classify(N, n, threshold * 0.99).regime == bounds.HUGE_N_SPARSE_BAND


def test_regime_sweep_lower_le_upper():
    gen = np.random.default_rng(1)
    tags = set()
    for _ in range(10_000):
        N = int(10 ** gen.uniform(0.5, 9))
        N = max(N, 3)
        n = int(min(N - 1, max(2, 10 ** gen.uniform(0.3, math.log10(N)))))
        p = 10 ** gen.uniform(-14, 0)
        rep = regime_classify(N, n, p)
        tags.add(rep.regime)
        assert rep.lower_bound <= rep.upper_bound, (N, n, p, rep)
        if rep.regime == bounds.SPARSE_BAND:
            assert rep.omega >= 6
    assert tags == {bounds.SUBCRITICAL, bounds.DENSE_BAND, bounds.SPARSE_BAND, bounds.HUGE_N_DENSE_BAND,
                    bounds.HUGE_N_SPARSE_BAND, bounds.OUT_OF_SCOPE}


def test_erdos_gallai_examples():
    assert erdos_gallai_max(12, 4) == 12
    assert erdos_gallai_max(9, 2) == 0
    assert erdos_gallai_max(6, 3) == 3


def test_chernoff_examples():
    assert chernoff_lower_tail(8, 0.5) == pytest.approx(math.exp(-1), rel=1e-12)
    assert chernoff_lower_tail(0, 0.3) == 1.0
    value = chernoff_lower_tail(2475, 0.15)
    assert value == pytest.approx(float(mp.exp(-mpf(2475) * mpf("0.15") ** 2 / 2)), rel=1e-9)
    assert value < 1e-11


def test_expected_isolated_edges():
    assert expected_isolated_edges(2, 1.0) == 1.0
    assert expected_isolated_edges(50, 0.0) == 0.0
    value = expected_isolated_edges(10**5, 1e-5)
    assert value == pytest.approx(float(iso_oracle(10**5, mpf(1) / 10**5)), rel=1e-12)
    assert round(value) == 6767


@given(st.integers(2, 10**6), st.floats(1e-9, 0.5))
def test_expected_isolated_edges_matches_oracle(N, p):
    assert expected_isolated_edges(N, p) == pytest.approx(float(iso_oracle(N, p)), rel=1e-9, abs=1e-300)


def test_coloring_bounds_examples():
    assert coloring_bounds(50, 10, 0.01).affine_upper == 6
    assert coloring_bounds(200, 10, 0.01).random_upper == 4
    cb = coloring_bounds(1000, 10, 1 / (4 * 10))
    assert cb.corollary_upper == pytest.approx(50)


def test_coloring_bounds_consistency_sweep():
    # counting lower bound with the band upper endpoint substituted for ex never
    # exceeds an applicable upper bound
    gen = np.random.default_rng(3)
    checked = 0
    for _ in range(3000):
        n = int(gen.integers(2, 200))
        N = n * int(10 ** gen.uniform(0.5, 5))
        p = 10 ** gen.uniform(-8, 0)
        rep = regime_classify(N, n, p)
        if rep.regime in (bounds.OUT_OF_SCOPE,) or N / n < 2:
            continue
        cb = coloring_bounds(N, n, p, ex_estimate=rep.upper_bound)
        for lo in cb.lowers():
            if lo is cb.counting_lower:
                assert lo <= min(cb.uppers()) + 1e-9, (N, n, p)
                checked += 1
    assert checked > 1000
