"""
Which bound applies?
====================

``regime_classify`` picks the asymptotic band that covers ``(N, n, p)`` and
evaluates its endpoints. The degree-threshold window used by the dense
extraction is computed separately.
"""

from pathfree.bounds import beta_solve, beta_window, regime_classify

for N, n, p in [(3000, 30, 0.05), (3000, 30, 0.001), (10**5, 10, 1e-5), (976529, 6, 976529 ** (-1 / 15))]:
    rep = regime_classify(N, n, p)
    print(f"{rep.regime:>20}  [{rep.lower_bound:.4g}, {rep.upper_bound:.4g}]")

# %%
w = beta_window(65536, 64, 0.01354, 0.5)
print("threshold window", (w.beta_lo, w.beta_hi), "midpoint", w.beta_mid)
print("inverse of 2b log b at 10:", beta_solve(10.0))
