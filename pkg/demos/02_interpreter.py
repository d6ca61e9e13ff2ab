"""A defender that only sees what a learning interpreter tells it.

A perfect-memory interpreter delays the defender but leaves its ceiling
intact; a forgetful one costs efficiency permanently.
"""

from popsim import fo_spec, po_spec, simulate

fo = simulate(fo_spec(0.01, m=2000, t_max=1000, seed=2))
for gamma_i in (0.0, 0.1):
    po = simulate(po_spec(0.01, gamma_i, alpha=0.0, m=2000, t_max=1000, seed=2))
    print(f"gamma_I={gamma_i}: PO asymptote {po.asymptote:.3f} (FO {fo.asymptote:.3f}), "
          f"steps to 90%: PO {po.time_to_reach(0.9)} vs FO {fo.time_to_reach(0.9)}")

floor = simulate(po_spec(1.0, 1.0, alpha=0.0, m=4000, t_max=400, seed=3)).asymptote
print(f"both agents fully forgetful: {floor:.4f} (61/121 = {61 / 121:.4f})")
