"""Asymptotic efficiency over (gamma_D, gamma_I) and the transparency loss."""

import numpy as np

from popsim.analytics import asymptotic_surface, model_for, transparency

grid = np.linspace(0, 1, 5)
for alpha in (1.0, 0.5, 0.0):
    s = asymptotic_surface(alpha, grid, grid)
    print(f"alpha={alpha}")
    print(np.array2string(s.r_max, precision=3))

d = model_for(1.0)
rep = transparency(d.p, 0.5 * d.p + 0.5 * (d.p * d.p + d.q * d.q))
print(f"gamma_D=gamma_I=1, alpha=0.5: beta={rep.beta:.4f}, mu={rep.mu:.4f}")
