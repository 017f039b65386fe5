"""Closed-form quantities for ex(G(N, p), P_{n+1}) and related coloring numbers.

All logarithms are natural. Everything here is pure scalar math.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

# Finite-scale stand-in for "p >> 1/N^2" in the isolated-edge regime.
SUBCRITICAL_FLOOR = 100.0

SUBCRITICAL = "subcritical-p<=1/N"
DENSE_BAND = "T1.3-i"
SPARSE_BAND = "T1.3-ii"
HUGE_N_DENSE_BAND = "T1.4-i"
HUGE_N_SPARSE_BAND = "T1.4-ii"
OUT_OF_SCOPE = "out-of-scope"


def two_beta_log_beta(beta: float) -> float:
    return 2.0 * beta * math.log(beta)


def beta_solve(target: float) -> float:
    """The unique beta >= 1 with 2 beta log beta = target."""
    if target < 0 or math.isnan(target):
        raise ValueError(f"target must be >= 0, got {target}")
    if target == 0:
        return 1.0
    hi = 2.0
    while two_beta_log_beta(hi) < target:
        hi *= 2.0
    return brentq(lambda b: two_beta_log_beta(b) - target, 1.0, hi,
                  xtol=1e-300, rtol=4 * 2.220446049250313e-16, maxiter=500)


@dataclass(frozen=True)
class BetaWindow:
    """Admissible range of 2 beta log beta for the dense-set extraction."""

    lo: float
    hi: float
    beta_lo: float
    beta_hi: float
    feasible: bool

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def beta_mid(self) -> float:
        if not self.feasible:
            raise ValueError(f"empty window: lo={self.lo!r} > hi={self.hi!r}")
        return beta_solve(self.mid)


def beta_window(N: float, n: int, p: float, alpha: float) -> BetaWindow:
    """Lower and upper limits on 2 beta log beta, with r = N/n.

    lo = max{2 log(2e), (2/(alpha n p)) log(1/(alpha n p))}
    hi = min{(2/p) log(1/p), (1/(np)) (log r - log(alpha 2^(1/alpha)))}
    """
    if not N > 2 * n:
        raise ValueError(f"need N > 2n, got N={N}, n={n}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"need 0 < p < 1, got {p}")
    if not 0.0 < alpha <= 0.5:
        raise ValueError(f"need 0 < alpha <= 1/2, got {alpha}")
    r = N / n
    anp = alpha * n * p
    lo = max(2.0 * math.log(2.0 * math.e), (2.0 / anp) * math.log(1.0 / anp))
    hi = min((2.0 / p) * math.log(1.0 / p),
             (math.log(r) - math.log(alpha) - math.log(2.0) / alpha) / (n * p))
    feasible = lo <= hi
    beta_hi = beta_solve(hi) if hi >= 0 else float("nan")
    return BetaWindow(lo, hi, beta_solve(lo), beta_hi, feasible)


@dataclass(frozen=True)
class RegimeReport:
    regime: str
    omega: float
    lower_bound: float
    upper_bound: float
    notes: str = ""
    N: float = field(default=0, compare=False)
    n: int = field(default=0, compare=False)
    p: float = field(default=0.0, compare=False)


def omega_band(omega: float, p: float, n: int, N: float) -> tuple[float, float]:
    """(1/75, 8) x (omega / log omega) p n N."""
    core = omega / math.log(omega) * p * n * N
    return core / 75.0, 8.0 * core


def regime_classify(N: float, n: int, p: float) -> RegimeReport:
    """Which asymptotic band covers (N, n, p), and its endpoints for ex(G(N, p), P_{n+1}).

    Boundaries go to case (i) when p sits exactly on the threshold.
    """
    if not (N > n >= 2):
        raise ValueError(f"need N > n >= 2, got N={N}, n={n}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"need 0 < p <= 1, got {p}")
    log_r = math.log(N / n)
    notes = []

    if p <= 1.0 / N:
        if p < SUBCRITICAL_FLOOR / (N * N):
            return RegimeReport(OUT_OF_SCOPE, float("nan"), 0.0, math.comb(int(N), 2) * p,
                                f"p below {SUBCRITICAL_FLOOR:g}/N^2: isolated-edge regime not reached",
                                N, n, p)
        lower = expected_isolated_edges(int(N), p)
        upper = N * (N - 1) / 2.0 * p
        notes.append("ex = Theta(pN^2); at p = 1/N, ex ≥ N/15")
        return RegimeReport(SUBCRITICAL, float("nan"), lower, upper, "; ".join(notes), N, n, p)

    if N < 3 * n:
        # only the deterministic Erdos-Gallai cap (n - 1) N / 2 is left
        return RegimeReport(OUT_OF_SCOPE, float("nan"), 0.0, 0.5 * (n - 1) * N,
                            "N < 3n: no asymptotic band applies", N, n, p)

    if log_r <= 2 * n:  # N <= n e^{2n}
        threshold = log_r / (6 * n)
        if p >= threshold:
            return RegimeReport(DENSE_BAND, log_r / (n * p), 0.25 * p * n * N, 18.0 * p * n * N,
                                f"p >= log(N/n)/(6n) = {threshold:.6g}", N, n, p)
        omega = log_r / (n * p)
        assert omega >= 6.0, omega
        lo, hi = omega_band(omega, p, n, N)
        if abs(math.log(omega)) < 0.5:
            notes.append("|log omega| < 0.5: band near its singular point")
        return RegimeReport(SPARSE_BAND, omega, lo, hi, "; ".join(notes), N, n, p)

    threshold = math.exp(-2.0 * math.log(N) / (5 * n))
    omega = math.log(N) / (n * p)
    if p >= threshold:
        return RegimeReport(HUGE_N_DENSE_BAND, omega, n * N / 16.0, n * N / 2.0,
                            f"p >= N^(-2/(5n)) = {threshold:.6g}", N, n, p)
    lo, hi = omega_band(omega, p, n, N)
    if abs(math.log(omega)) < 0.5:
        notes.append("|log omega| < 0.5: band near its singular point")
    return RegimeReport(HUGE_N_SPARSE_BAND, omega, lo, hi, "; ".join(notes), N, n, p)


def erdos_gallai_max(N: int, k: int) -> float:
    """(k - 2) N / 2: the most edges an N-vertex graph without P_k can have."""
    if N < 2 or k < 2:
        raise ValueError("need N, k >= 2")
    return 0.5 * (k - 2) * N


def chernoff_lower_tail(mu: float, delta: float) -> float:
    """exp(-mu delta^2 / 2), bounding P(X <= (1 - delta) mu)."""
    if mu < 0 or not 0.0 < delta < 1.0:
        raise ValueError("need mu >= 0 and 0 < delta < 1")
    return math.exp(-mu * delta * delta / 2.0)


def expected_isolated_edges(N: int, p: float) -> float:
    """C(N, 2) p (1 - p)^(2(N - 2))."""
    if N < 2 or not 0.0 <= p <= 1.0:
        raise ValueError("need N >= 2 and p in [0, 1]")
    pairs = N * (N - 1) / 2.0
    if p == 1.0:
        return pairs if N == 2 else 0.0
    return pairs * p * math.exp(2 * (N - 2) * math.log1p(-p))


def prime_power(q: int) -> tuple[int, int] | None:
    """(prime, exponent) if q is a prime power, else None."""
    if q < 2:
        return None
    d = 2
    while d * d <= q:
        if q % d == 0:
            e = 0
            while q % d == 0:
                q //= d
                e += 1
            return (d, e) if q == 1 else None
        d += 1
    return q, 1


def _ceil(x: float) -> int:
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


@dataclass(frozen=True)
class ColoringBounds:
    r: float
    affine_upper: int | None          # r + 1 when r is a prime power
    random_upper: int                 # ceil(2pN), at least 1
    corollary_upper: float | None     # 2r / omega when p = 1/(omega n), omega >= 2
    dense_lower: float | None         # c > r/7 when p >= 22 log(r/7)/n
    sparse_lower: float | None        # (log w / 24 w) r, w = log r/(np), p <= log r/(34n)
    counting_lower: float | None      # p N^2 / (3 ex) when ex is supplied

    def uppers(self) -> list[float]:
        return [u for u in (self.affine_upper, self.random_upper, self.corollary_upper)
                if u is not None]

    def lowers(self) -> list[float]:
        return [x for x in (self.dense_lower, self.sparse_lower, self.counting_lower)
                if x is not None]


def coloring_bounds(N: float, n: int, p: float, ex_estimate: float | None = None) -> ColoringBounds:
    r = N / n
    if r < 2:
        raise ValueError(f"need r = N/n >= 2, got {r}")
    affine = None
    if abs(r - round(r)) < 1e-12 and prime_power(int(round(r))):
        affine = int(round(r)) + 1
    random_upper = max(1, _ceil(2 * p * N))
    omega_c = 1.0 / (p * n)
    # any edge needs one color, so neither upper bound drops below 1
    corollary = max(1.0, 2 * r / omega_c) if omega_c >= 2 else None
    dense = None
    if r > 7 and p >= 22 * math.log(r / 7) / n:
        dense = r / 7
    sparse = None
    if p <= math.log(r) / (34 * n):
        w = math.log(r) / (n * p)
        sparse = math.log(w) / (24 * w) * r
    counting = p * N * N / (3 * ex_estimate) if ex_estimate else None
    return ColoringBounds(r, affine, random_upper, corollary, dense, sparse, counting)
