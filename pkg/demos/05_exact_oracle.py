"""Exact expected efficiency for short runs, checked against a large ensemble."""

from popsim import fo_spec, simulate
from popsim.oracle import oracle_exact

exact = oracle_exact(0.5, 6)
res = simulate(fo_spec(0.5, m=100000, t_max=6, seed=5))
for t, (e, r, se) in enumerate(zip(exact, res.r_mean, res.r_stderr), 1):
    print(f"t={t}: exact {e:.5f}  monte carlo {r:.5f} +- {se:.5f}")
