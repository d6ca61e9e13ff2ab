"""Exact expected efficiency by enumerating every history of a short run.

Plain Python floats and lists only; nothing here shares code with the
vectorised ensemble it is used to check.
"""

from __future__ import annotations

from typing import List

MAX_HORIZON = 8


def _efficiency(h, n):
    return sum(h[s][s] / sum(h[s]) for s in range(n)) / n


def _step(h, gamma, s, a, reward):
    new = [[w - gamma * (w - 1.0) for w in row] for row in h]
    new[s][a] += reward
    return new


def oracle_exact(gamma: float, t_max: int, N: int = 2, reward_unit: float = 1.0,
                 scenario: str = "fo") -> List[float]:
    """Return ``[E r^(1), ..., E r^(t_max)]`` for a fully observable learner.

    The correct action for symbol ``s`` is action ``s``.  Every (symbol, action)
    branch is followed to depth ``t_max - 1`` and weighted by its probability.
    """
    if scenario != "fo":
        raise ValueError("the exact oracle only covers the fully observable game")
    if not 1 <= t_max <= MAX_HORIZON:
        raise ValueError(f"horizon must be between 1 and {MAX_HORIZON}, got {t_max}")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    totals = [0.0] * t_max

    def walk(h, weight, depth):
        totals[depth] += weight * _efficiency(h, N)
        if depth + 1 == t_max:
            return
        for s in range(N):
            row_sum = sum(h[s])
            for a in range(N):
                w = weight * (1.0 / N) * (h[s][a] / row_sum)
                walk(_step(h, gamma, s, a, reward_unit if a == s else 0.0), w, depth + 1)

    walk([[1.0] * N for _ in range(N)], 1.0, 0)
    return totals
