"""Run configured experiments and write their CSV output."""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from .analytics import asymptotic_surface, lambda_eff_curve
from .config import ConfigError, ExperimentConfig
from .ensemble import EnsembleResult, EnsembleSpec, simulate
from .games import AgentStrategy, GammaSplit, StrategyProfile, analyze_game, build_game, \
    classify_coalition, format_game_report
from .invasion import RoundRecord
from .oracle import oracle_exact


def windowed_mean(series, window: int) -> np.ndarray:
    """Trailing mean over the last ``window`` entries (fewer at the start)."""
    if window < 1:
        raise ValueError("window must be at least 1")
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        return x
    c = np.concatenate(([0.0], np.cumsum(x)))
    idx = np.arange(1, x.size + 1)
    lo = np.maximum(idx - window, 0)
    return (c[idx] - c[lo]) / (idx - lo)


def action_rate_estimator(records, window: int) -> np.ndarray:
    """Windowed rate of blocked attacks, averaged over an ensemble.

    ``records`` is one agent's list of :class:`RoundRecord` or a list of such
    lists (equal length).
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    records = list(records)
    if not records:
        return np.zeros(0)
    runs = [records] if isinstance(records[0], RoundRecord) else [list(r) for r in records]
    if len({len(r) for r in runs}) != 1:
        raise ValueError("all runs must have the same length")
    blocked = np.array([[float(rec.blocked) for rec in run] for run in runs])
    return windowed_mean(blocked.mean(axis=0), window)


@dataclass
class EfficiencyCurve:
    t: np.ndarray
    r_mean: np.ndarray
    r_stderr: np.ndarray
    action_rate: Optional[np.ndarray] = None
    asymptote: float = float("nan")
    asymptote_stderr: float = float("nan")
    interpreter_mean: Optional[np.ndarray] = None
    ensemble: Optional[EnsembleResult] = None

    @classmethod
    def from_ensemble(cls, res: EnsembleResult, window: int) -> "EfficiencyCurve":
        return cls(res.t, res.r_mean, res.r_stderr, windowed_mean(res.blocked_mean, window),
                   res.asymptote, res.asymptote_stderr, res.interp_mean, res)


def _fmt(x) -> str:
    return repr(float(x))


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else _fmt(v) for v in row])
    return buf.getvalue()


def curve_csv(curve: EfficiencyCurve) -> str:
    if curve.action_rate is None:
        return _csv(["t", "r_mean", "r_stderr"],
                    ((str(int(t)), r, e) for t, r, e in zip(curve.t, curve.r_mean, curve.r_stderr)))
    return _csv(["t", "r_mean", "r_stderr", "action_rate"],
                ((str(int(t)), r, e, a) for t, r, e, a in
                 zip(curve.t, curve.r_mean, curve.r_stderr, curve.action_rate)))


@dataclass
class Outcome:
    config: ExperimentConfig
    csv: str
    result: object
    report: Optional[str] = None
    paths: List[str] = field(default_factory=list)


def _ensemble_spec(cfg: ExperimentConfig) -> EnsembleSpec:
    if cfg.scenario in ("fo", "appendix"):
        return EnsembleSpec(mode="fo", num_symbols=cfg.N, gamma_d=cfg.gamma_d, m=cfg.m,
                            t_max=cfg.t_max, seed=cfg.seed, t_switch=cfg.t_switch)
    alpha = 0.0 if cfg.scenario == "po-absolute" else cfg.alpha
    return EnsembleSpec(mode="po", num_symbols=cfg.N, gamma_d=cfg.gamma_d, gamma_i=cfg.gamma_i,
                        alpha=alpha, m=cfg.m, t_max=cfg.t_max, seed=cfg.seed, t_switch=cfg.t_switch,
                        colored=cfg.colored, reward_basis=cfg.reward_basis)


def _run(cfg: ExperimentConfig, workers: int) -> Outcome:
    sc = cfg.scenario
    if sc in ("fo", "appendix", "po-absolute", "po-mixed"):
        res = simulate(_ensemble_spec(cfg), workers=workers)
        curve = EfficiencyCurve.from_ensemble(res, cfg.window)
        return Outcome(cfg, curve_csv(curve), curve)

    if sc == "surface":
        alphas = cfg.alphas or (cfg.alpha,)
        surfaces = [asymptotic_surface(a, cfg.gammas, cfg.gamma_i_grid, mode=cfg.mode, N=cfg.N,
                                       m=cfg.m, t=cfg.t_max, seed=cfg.seed, workers=workers,
                                       colored=cfg.colored, reward_basis=cfg.reward_basis)
                    if cfg.mode == "monte-carlo" else
                    asymptotic_surface(a, cfg.gammas, cfg.gamma_i_grid, mode=cfg.mode, N=cfg.N)
                    for a in alphas]
        rows = [row for s in surfaces for row in s.long_form()]
        return Outcome(cfg, _csv(["gamma_d", "gamma_i", "alpha", "r_max"], rows), surfaces)

    if sc == "lambda-eff":
        curve = lambda_eff_curve(cfg.gammas, cfg.N, cfg.m, cfg.t_max, cfg.seed, workers)
        return Outcome(cfg, curve.to_csv(), curve)

    if sc == "game":
        game = build_game(cfg.alpha_a, cfg.gamma_a, cfg.alpha_b, cfg.gamma_b, cfg.total_gamma)
        analysis = analyze_game(game)
        rows = []
        for r, rn in enumerate("AB"):
            for c, cn in enumerate("AB"):
                rows.append((rn, cn, game.payoffs[r, c, 0], game.payoffs[r, c, 1],
                             str((rn, cn) in analysis.nash).lower(),
                             str((rn, cn) in analysis.pareto).lower()))
        text = _csv(["row", "col", "payoff_row", "payoff_col", "nash", "pareto"], rows)
        return Outcome(cfg, text, (game, analysis), report=format_game_report(game, analysis))

    if sc == "coalition":
        total = cfg.total_gamma
        rows, reports = [], []
        for g1i in cfg.gammas:
            for g1j in cfg.gammas:
                if g1i > total or g1j > total:
                    continue
                prof = StrategyProfile(AgentStrategy(GammaSplit.of(total, g1i), cfg.alpha),
                                       AgentStrategy(GammaSplit.of(total, g1j), cfg.alpha))
                rep = classify_coalition(prof)
                reports.append(rep)
                rows.append((g1i, g1j, rep.r_i, rep.r_j, rep.r_col_po, rep.r_col_fo, rep.kind))
        text = _csv(["gamma_1i", "gamma_1j", "r_i", "r_j", "r_col_po", "r_col_fo", "kind"], rows)
        return Outcome(cfg, text, reports)

    if sc == "oracle":
        values = oracle_exact(cfg.gamma_d, cfg.t_max, cfg.N)
        return Outcome(cfg, _csv(["t", "r_exact"], ((str(t), v) for t, v in enumerate(values, 1))), values)

    raise ConfigError(f"unknown scenario {sc!r}")


def run_experiment(cfg: ExperimentConfig, workers: Optional[int] = None) -> Outcome:
    """Validate, run and (if ``cfg.out`` is set) write the CSV and any text report."""
    cfg.validate()
    outcome = _run(cfg, workers or cfg.threads)
    if cfg.out:
        parent = os.path.dirname(os.path.abspath(cfg.out))
        os.makedirs(parent, exist_ok=True)
        with open(cfg.out, "w", newline="") as fh:
            fh.write(outcome.csv)
        outcome.paths.append(cfg.out)
        if outcome.report is not None:
            path = os.path.splitext(cfg.out)[0] + ".txt"
            with open(path, "w") as fh:
                fh.write(outcome.report)
            outcome.paths.append(path)
    return outcome
