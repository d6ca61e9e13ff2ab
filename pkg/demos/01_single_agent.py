"""A single defender learning the invasion game, with and without forgetting.

Forgetting buys adaptability at the price of a lower ceiling: with gamma = 1
the learner settles at p = 6/11 instead of approaching 1.
"""

from popsim import fo_spec, pq_closed_form, simulate
from popsim.analytics import default_lambda_table

table = default_lambda_table()

for gamma in (0.0, 0.1, 1.0):
    res = simulate(fo_spec(gamma, m=2000, t_max=500, seed=1))
    model = table.model(gamma)
    print(f"gamma={gamma:<4} r(10)={res.r_mean[9]:.3f}  r(500)={res.r_mean[-1]:.3f}  "
          f"asymptote={res.asymptote:.4f}  closed form p={model.p:.4f}")

print("gamma=1 with lambda_eff=0.2:", pq_closed_form(1.0, 0.2).p, "vs 6/11 =", 6 / 11)
