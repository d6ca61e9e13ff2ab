"""Vectorised Monte-Carlo ensembles of invasion-game agents.

Agents are grouped into fixed-size chunks.  Each agent draws from its own
``RngStream(seed, agent_index)``, the per-chunk statistics are plain sums, and
chunks are reduced in index order, so the result is bit-identical for any
number of workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from .agent import inverse_cdf, probs_from_weights, relax
from .invasion import InvasionRules
from .observability import REWARD_BASES, fo_efficiency_array, po_efficiency_array
from .rng import stream_block

CHUNK_SIZE = 1000


@dataclass(frozen=True)
class EnsembleSpec:
    mode: str = "fo"                 # "fo" or "po"
    num_symbols: int = 2
    gamma_d: float = 0.0
    gamma_i: float = 0.0
    alpha: float = 1.0
    m: int = 1000
    t_max: int = 1000
    seed: int = 0
    t_switch: Optional[int] = None
    colored: bool = False
    reward_basis: str = "perceived"
    reward_unit: float = 1.0
    tail_fraction: float = 0.1

    def __post_init__(self):
        if self.mode not in ("fo", "po"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for name in ("gamma_d", "gamma_i", "alpha"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.m < 1 or self.t_max < 1:
            raise ValueError("m and t_max must be at least 1")
        if self.num_symbols < 2:
            raise ValueError("num_symbols must be at least 2")
        if self.reward_basis not in REWARD_BASES:
            raise ValueError(f"reward_basis must be one of {REWARD_BASES}")
        if not 0.0 < self.tail_fraction <= 1.0:
            raise ValueError("tail_fraction must lie in (0, 1]")

    @property
    def rules(self) -> InvasionRules:
        return InvasionRules(self.num_symbols, switch_time=self.t_switch)

    @property
    def tail_start(self) -> int:
        """First 1-based step of the averaging window at the end of the run."""
        k = max(1, int(round(self.tail_fraction * self.t_max)))
        return self.t_max - k + 1


def _moments(total, sq, m):
    mean = total / m
    if m < 2:
        return mean, np.zeros_like(np.asarray(mean, dtype=float))
    var = np.maximum(sq / m - mean * mean, 0.0) * m / (m - 1)
    return mean, np.sqrt(var / m)


@dataclass
class EnsembleResult:
    spec: EnsembleSpec
    r_mean: np.ndarray
    r_stderr: np.ndarray
    blocked_mean: np.ndarray
    interp_mean: Optional[np.ndarray]
    asymptote: float
    asymptote_stderr: float
    tail_blocked: float
    tail_gap: float             # tail mean of (blocked indicator - r), per agent
    tail_gap_stderr: float
    deposit_rate: float         # reward per step per rewarded edge, tail window
    deposit_stderr: float
    h_rewarded: float           # tail mean h on rewarded edges
    h_rewarded_stderr: float

    @property
    def t(self) -> np.ndarray:
        return np.arange(1, self.spec.t_max + 1)

    @property
    def m(self) -> int:
        return self.spec.m

    def time_to_reach(self, fraction: float = 0.9, level: Optional[float] = None) -> int:
        """First step whose ensemble efficiency reaches ``fraction * level``."""
        level = self.asymptote if level is None else level
        hit = np.nonzero(self.r_mean >= fraction * level)[0]
        return int(hit[0]) + 1 if hit.size else self.spec.t_max + 1


_SUM_KEYS = ("r", "r2", "blocked", "interp", "tail_r", "tail_r2", "tail_b",
             "gap", "gap2", "dep", "dep2", "hrw", "hrw2")


def _run_chunk(spec: EnsembleSpec, first: int, count: int) -> dict:
    n, T = spec.num_symbols, spec.t_max
    po = spec.mode == "po"
    k = 4 if po else 2
    u = stream_block(spec.seed, first, count, (T, k))
    rows = (2 * n if spec.colored else n) if po else n
    off = n if (po and spec.colored) else 0
    h_d = np.ones((count, rows, n))
    h_i = np.ones((count, n, n)) if po else None
    ar = np.arange(count)
    unit = spec.reward_unit
    rules = spec.rules
    tail0 = spec.tail_start
    ntail = T - tail0 + 1

    r_sum = np.zeros(T)
    r_sq = np.zeros(T)
    b_sum = np.zeros(T)
    i_sum = np.zeros(T) if po else None
    tail_r = np.zeros(count)
    tail_b = np.zeros(count)
    dep = np.zeros(count)
    hrw = np.zeros(count)

    for step in range(T):
        t = step + 1
        amap = rules.active_map_array(t)
        p_d = probs_from_weights(h_d)
        world = p_d[:, :n, :]
        r = fo_efficiency_array(world, amap)
        if po:
            p_i = probs_from_weights(h_i)
            if spec.alpha < 1.0:
                po_r = po_efficiency_array(p_d[:, off:off + n, :], p_i, amap)
                r = spec.alpha * r + (1.0 - spec.alpha) * po_r
            i_sum[step] = fo_efficiency_array(p_i, np.arange(n)).sum()
        r_sum[step] = r.sum()
        r_sq[step] = (r * r).sum()

        uu = u[:, step, :]
        s = np.minimum((uu[:, 0] * n).astype(np.intp), n - 1)
        if po:
            direct = uu[:, 1] < spec.alpha
            b = inverse_cdf(p_i[ar, s], uu[:, 2])
            percept = np.where(direct, s, b + off)
            a = inverse_cdf(p_d[ar, percept], uu[:, 3])
            blocked = a == amap[s]
            if spec.reward_basis == "world":
                hit = blocked
            else:
                hit = a == amap[np.where(direct, s, b)]
            relax(h_i, spec.gamma_i)
            h_i[ar, s, b] += unit * (b == s)
        else:
            percept = s
            a = inverse_cdf(p_d[ar, s], uu[:, 1])
            blocked = a == amap[s]
            hit = blocked
        relax(h_d, spec.gamma_d)
        gain = unit * hit
        h_d[ar, percept, a] += gain
        b_sum[step] = blocked.sum()

        if t >= tail0:
            tail_r += r
            tail_b += blocked
            dep += gain
            hrw += h_d[:, np.arange(n), amap].mean(axis=1)

    tail_r /= ntail
    tail_b /= ntail
    dep /= ntail * n
    hrw /= ntail
    gap = tail_b - tail_r
    return {
        "r": r_sum, "r2": r_sq, "blocked": b_sum, "interp": i_sum,
        "tail_r": tail_r.sum(), "tail_r2": (tail_r ** 2).sum(), "tail_b": tail_b.sum(),
        "gap": gap.sum(), "gap2": (gap ** 2).sum(),
        "dep": dep.sum(), "dep2": (dep ** 2).sum(),
        "hrw": hrw.sum(), "hrw2": (hrw ** 2).sum(),
    }


def chunk_bounds(m: int, chunk_size: int = CHUNK_SIZE) -> List[tuple]:
    return [(lo, min(chunk_size, m - lo)) for lo in range(0, m, chunk_size)]


def simulate(spec: EnsembleSpec, workers: int = 1, chunk_size: int = CHUNK_SIZE) -> EnsembleResult:
    bounds = chunk_bounds(spec.m, chunk_size)
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _run_chunk(spec, *b), bounds))
    else:
        parts = [_run_chunk(spec, *b) for b in bounds]

    acc = {}
    for key in _SUM_KEYS:
        if parts[0][key] is None:
            acc[key] = None
            continue
        total = parts[0][key]
        for part in parts[1:]:
            total = total + part[key]
        acc[key] = total

    m = spec.m
    r_mean, r_err = _moments(acc["r"], acc["r2"], m)
    asym, asym_err = _moments(acc["tail_r"], acc["tail_r2"], m)
    gap, gap_err = _moments(acc["gap"], acc["gap2"], m)
    dep, dep_err = _moments(acc["dep"], acc["dep2"], m)
    hrw, hrw_err = _moments(acc["hrw"], acc["hrw2"], m)
    return EnsembleResult(
        spec=spec,
        r_mean=r_mean,
        r_stderr=r_err,
        blocked_mean=acc["blocked"] / m,
        interp_mean=None if acc["interp"] is None else acc["interp"] / m,
        asymptote=float(asym),
        asymptote_stderr=float(asym_err),
        tail_blocked=float(acc["tail_b"] / m),
        tail_gap=float(gap),
        tail_gap_stderr=float(gap_err),
        deposit_rate=float(dep),
        deposit_stderr=float(dep_err),
        h_rewarded=float(hrw),
        h_rewarded_stderr=float(hrw_err),
    )


def fo_spec(gamma: float, m: int = 1000, t_max: int = 1000, seed: int = 0, **kw) -> EnsembleSpec:
    return EnsembleSpec(mode="fo", gamma_d=gamma, m=m, t_max=t_max, seed=seed, **kw)


def po_spec(gamma_d: float, gamma_i: float, alpha: float, m: int = 1000, t_max: int = 1000,
            seed: int = 0, **kw) -> EnsembleSpec:
    return EnsembleSpec(mode="po", gamma_d=gamma_d, gamma_i=gamma_i, alpha=alpha,
                        m=m, t_max=t_max, seed=seed, **kw)
