"""Closed-form asymptotics and the effective reward.

Under a constant per-step reward ``lam`` an edge settles at
``h_max = lam / gamma + 1``; with one rewarded action per percept the
asymptotic probabilities of the correct and of each wrong action are::

    p = (lam + gamma) / (lam + N gamma),   q = gamma / (lam + N gamma)

with ``(p, q) = (1, 0)`` at ``gamma = 0``.  The effective reward ``lam(gamma)``
is whatever makes ``p`` equal the simulated asymptotic efficiency of a fully
observable agent.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, List, Optional, Sequence, Union

import numpy as np

from .ensemble import fo_spec, po_spec, simulate

UNBOUNDED = math.inf


@dataclass(frozen=True)
class AsymptoticModel:
    N: int
    gamma: float
    lambda_eff: float
    p: float
    q: float

    @property
    def h_max(self) -> float:
        """Limit weight of a rewarded edge; ``inf`` when nothing is forgotten."""
        if self.gamma == 0:
            return UNBOUNDED
        return self.lambda_eff / self.gamma + 1.0


def pq_closed_form(gamma: float, lambda_eff: float, N: int = 2) -> AsymptoticModel:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    if lambda_eff < 0:
        raise ValueError("lambda_eff must be non-negative")
    if N < 2:
        raise ValueError("N must be at least 2")
    if gamma == 0:
        return AsymptoticModel(N, 0.0, lambda_eff, 1.0, 0.0)
    denom = lambda_eff + N * gamma
    return AsymptoticModel(N, gamma, lambda_eff, (lambda_eff + gamma) / denom, gamma / denom)


def lambda_from_p(p: float, gamma: float, N: int = 2) -> float:
    """Invert ``p(gamma)`` for the reward that produces it."""
    if p >= 1.0:
        return UNBOUNDED
    return gamma * (N * p - 1.0) / (1.0 - p)


# -- effective reward ---------------------------------------------------------

@dataclass(frozen=True)
class LambdaEffEstimate:
    gamma: float
    N: int
    lambda_eff: float
    stderr: float
    asymptote: float
    asymptote_stderr: float
    deposit_rate: float
    deposit_stderr: float
    h_rewarded: float
    h_rewarded_stderr: float
    m: int
    t: int
    reliable: bool


def estimate_lambda_eff(gamma: float, N: int = 2, m: int = 10000, t: int = 1000,
                        seed: int = 0, workers: int = 1, reward_unit: float = 1.0) -> LambdaEffEstimate:
    """Effective reward of a rewarded edge for a fully observable learner.

    The ensemble's late-time efficiency (mean over the final 10% of steps) is
    taken as ``p`` and the closed form is inverted.  At ``gamma = 0`` the
    inversion degenerates (``p -> 1``) and the directly measured reward deposit
    per rewarded edge is reported instead.
    """
    reliable = m >= 1000 and t >= 100
    if not reliable:
        warnings.warn(f"m={m}, t={t} is too small for a stationary estimate; "
                      "check the reported standard error", RuntimeWarning, stacklevel=2)
    res = simulate(fo_spec(gamma, m=m, t_max=t, seed=seed, num_symbols=N, reward_unit=reward_unit),
                   workers=workers)
    p, dp = res.asymptote, res.asymptote_stderr
    if gamma == 0 or p >= 1.0:
        lam, dlam = res.deposit_rate, res.deposit_stderr
    else:
        lam = max(lambda_from_p(p, gamma, N), 0.0)
        dlam = gamma * (N - 1) / (1.0 - p) ** 2 * dp
    return LambdaEffEstimate(gamma, N, lam, dlam, p, dp, res.deposit_rate, res.deposit_stderr,
                             res.h_rewarded, res.h_rewarded_stderr, m, t, reliable)


@dataclass
class EffectiveRewardCurve:
    gammas: np.ndarray
    lambda_eff: np.ndarray
    stderr: np.ndarray
    N: int = 2
    m: int = 0
    t: int = 0
    asymptote: Optional[np.ndarray] = None
    deposit_rate: Optional[np.ndarray] = None

    def __post_init__(self):
        self.gammas = np.asarray(self.gammas, dtype=float)
        self.lambda_eff = np.asarray(self.lambda_eff, dtype=float)
        self.stderr = np.asarray(self.stderr, dtype=float)
        if np.any(np.diff(self.gammas) <= 0):
            raise ValueError("gamma grid must be strictly increasing")

    def __call__(self, gamma: float) -> float:
        if not self.gammas[0] <= gamma <= self.gammas[-1]:
            raise ValueError(f"gamma={gamma} outside the tabulated range")
        return float(np.interp(gamma, self.gammas, self.lambda_eff))

    def model(self, gamma: float) -> AsymptoticModel:
        return pq_closed_form(gamma, self(gamma), self.N)

    def p(self, gamma: float) -> float:
        return self.model(gamma).p

    def q(self, gamma: float) -> float:
        return self.model(gamma).q

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["gamma", "lambda_eff", "lambda_stderr", "asymptote", "deposit_rate"])
        n = len(self.gammas)
        asym = self.asymptote if self.asymptote is not None else [math.nan] * n
        dep = self.deposit_rate if self.deposit_rate is not None else [math.nan] * n
        for row in zip(self.gammas, self.lambda_eff, self.stderr, asym, dep):
            w.writerow([repr(float(x)) for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, N: int = 2, m: int = 0, t: int = 0) -> "EffectiveRewardCurve":
        rows = list(csv.DictReader(io.StringIO(text)))
        col = lambda k: np.array([float(r[k]) for r in rows])
        return cls(col("gamma"), col("lambda_eff"), col("lambda_stderr"), N, m, t,
                   col("asymptote"), col("deposit_rate"))


def lambda_eff_curve(gammas: Iterable[float], N: int = 2, m: int = 10000, t: int = 1000,
                     seed: int = 0, workers: int = 1) -> EffectiveRewardCurve:
    ests = [estimate_lambda_eff(g, N, m, t, seed, workers) for g in gammas]
    return EffectiveRewardCurve(
        [e.gamma for e in ests], [e.lambda_eff for e in ests], [e.stderr for e in ests],
        N, m, t, np.array([e.asymptote for e in ests]), np.array([e.deposit_rate for e in ests]))


DEFAULT_TABLE_GRID = tuple(round(0.05 * k, 2) for k in range(21))
DEFAULT_TABLE_M = 10000
DEFAULT_TABLE_T = 1000
DEFAULT_TABLE_SEED = 2022


@lru_cache(maxsize=None)
def default_lambda_table() -> EffectiveRewardCurve:
    """The shipped N=2 table (21 gamma points, m=10000, t=1000)."""
    text = resources.files("popsim").joinpath("data/lambda_eff_n2.csv").read_text()
    return EffectiveRewardCurve.from_csv(text, 2, DEFAULT_TABLE_M, DEFAULT_TABLE_T)


LambdaLookup = Union[EffectiveRewardCurve, Callable[[float], float], None]


def model_for(gamma: float, lookup: LambdaLookup = None, N: int = 2) -> AsymptoticModel:
    lookup = default_lambda_table() if lookup is None else lookup
    if isinstance(lookup, EffectiveRewardCurve) and lookup.N != N:
        raise ValueError(f"lambda table is for N={lookup.N}, asked for N={N}")
    return pq_closed_form(gamma, lookup(gamma), N)


# -- partially observable asymptotes -------------------------------------------

def r_po_closed_form(alpha: float, model_defender: AsymptoticModel, model_interp: AsymptoticModel,
                     check: bool = True) -> float:
    """Asymptotic efficiency of a defender partly fed by an interpreter.

    ``alpha p_D + (1 - alpha) [p_D p_I + (N - 1) q_D q_I]``; for ``N = 2`` this
    is the familiar ``p_D p_I + q_D q_I`` bracket.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if model_defender.N != model_interp.N:
        raise ValueError("defender and interpreter models disagree on N")
    n = model_defender.N
    pd, qd, pi, qi = model_defender.p, model_defender.q, model_interp.p, model_interp.q
    value = alpha * pd + (1.0 - alpha) * (pd * pi + (n - 1) * qd * qi)
    if check and pd > 0:
        factored = pd * (1.0 - (1.0 - alpha) * (1.0 - pi - (n - 1) * qd / pd * qi))
        if abs(factored - value) > 1e-12:
            raise ArithmeticError(f"factored form {factored} != {value}")
    return value


@dataclass(frozen=True)
class TransparencyReport:
    r_fo: float
    r_po: float
    beta: float
    mu: float


def transparency(r_fo: float, r_po: float) -> TransparencyReport:
    if r_fo <= 0:
        raise ZeroDivisionError("r_fo must be positive")
    beta = r_po / r_fo
    return TransparencyReport(r_fo, r_po, beta, 1.0 - beta)


def mu_closed_form(alpha: float, model_defender: AsymptoticModel, model_interp: AsymptoticModel) -> float:
    """Transparency loss ``1 - r_PO / r_FO`` written through ``q_I``.

    Uses ``p + (N-1) q = 1``: ``mu = (1-alpha) (N-1) q_I (1 - q_D / p_D)``.
    """
    n = model_defender.N
    return (1.0 - alpha) * (n - 1) * model_interp.q * (1.0 - model_defender.q / model_defender.p)


# -- surfaces -------------------------------------------------------------------

@dataclass
class Surface:
    alpha: float
    gamma_d: np.ndarray
    gamma_i: np.ndarray
    r_max: np.ndarray                   # shape (len(gamma_d), len(gamma_i))
    stderr: np.ndarray
    modes: np.ndarray                   # "monte-carlo" / "closed-form" per cell

    def long_form(self):
        for a, gd in enumerate(self.gamma_d):
            for b, gi in enumerate(self.gamma_i):
                yield float(gd), float(gi), float(self.alpha), float(self.r_max[a, b])


SURFACE_MODES = ("monte-carlo", "closed-form")


def asymptotic_surface(alpha: float, gamma_d_grid: Sequence[float], gamma_i_grid: Sequence[float],
                       mode: str = "closed-form", lookup: LambdaLookup = None, N: int = 2,
                       m: int = 10000, t: int = 1000, seed: int = 0, workers: int = 1,
                       **sim_kw) -> Surface:
    if mode not in SURFACE_MODES:
        raise ValueError(f"mode must be one of {SURFACE_MODES}")
    gd = np.asarray(gamma_d_grid, dtype=float)
    gi = np.asarray(gamma_i_grid, dtype=float)
    if np.any((gd < 0) | (gd > 1)) or np.any((gi < 0) | (gi > 1)):
        raise ValueError("grids must lie within [0, 1]")
    r = np.zeros((gd.size, gi.size))
    err = np.zeros_like(r)
    for a, g_d in enumerate(gd):
        for b, g_i in enumerate(gi):
            if mode == "closed-form":
                r[a, b] = r_po_closed_form(alpha, model_for(g_d, lookup, N), model_for(g_i, lookup, N))
            else:
                res = simulate(po_spec(g_d, g_i, alpha, m=m, t_max=t, seed=seed, num_symbols=N, **sim_kw),
                               workers=workers)
                r[a, b], err[a, b] = res.asymptote, res.asymptote_stderr
    return Surface(float(alpha), gd, gi, r, err, np.full(r.shape, mode, dtype=object))
