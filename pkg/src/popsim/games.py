"""Two defender-interpreter agents playing each other's teacher.

Each agent splits its forgetting budget ``gamma_i = blocking + teaching``.  Its
asymptotic efficiency depends on its own blocking factor, its partner's
teaching factor and its own observability::

    r_i = alpha_i p(g_1i) + (1 - alpha_i) [p(g_1i) p(g_2j) + q(g_1i) q(g_2j)]
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .analytics import LambdaLookup, model_for, r_po_closed_form
from .ensemble import po_spec, simulate

PAYOFF_MODES = ("closed-form", "monte-carlo")
SPLIT_TOL = 1e-12


@dataclass(frozen=True)
class GammaSplit:
    total: float
    blocking: float
    teaching: float

    def __post_init__(self):
        if not 0.0 <= self.total <= 1.0:
            raise ValueError(f"total gamma must lie in [0, 1], got {self.total}")
        if self.blocking < 0 or self.teaching < 0:
            raise ValueError("split components must be non-negative")
        if abs(self.blocking + self.teaching - self.total) > SPLIT_TOL:
            raise ValueError("blocking + teaching must equal the total")

    @classmethod
    def of(cls, total: float, blocking: float) -> "GammaSplit":
        return cls(total, blocking, total - blocking)

    @classmethod
    def selfish(cls, total: float) -> "GammaSplit":
        return cls(total, 0.0, total)

    @classmethod
    def sacrifice(cls, total: float) -> "GammaSplit":
        return cls(total, total, 0.0)


@dataclass(frozen=True)
class AgentStrategy:
    split: GammaSplit
    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class StrategyProfile:
    i: AgentStrategy
    j: AgentStrategy


def rmax_agent(alpha_i: float, gamma_block_self: float, gamma_teach_partner: float,
               lambda_eff_lookup: LambdaLookup = None, mode: str = "closed-form",
               m: int = 10000, t: int = 1000, seed: int = 0) -> float:
    for v in (alpha_i, gamma_block_self, gamma_teach_partner):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"parameter {v} outside [0, 1]")
    if mode == "closed-form":
        return r_po_closed_form(alpha_i, model_for(gamma_block_self, lambda_eff_lookup),
                                model_for(gamma_teach_partner, lambda_eff_lookup))
    if mode == "monte-carlo":
        res = simulate(po_spec(gamma_block_self, gamma_teach_partner, alpha_i, m=m, t_max=t, seed=seed))
        return res.asymptote
    raise ValueError(f"mode must be one of {PAYOFF_MODES}")


@dataclass(frozen=True)
class CoalitionReport:
    kind: str               # "superadditive", "additive" or "subadditive"
    r_col_po: float
    r_col_fo: float
    r_i: float
    r_j: float


def classify_coalition(profile: StrategyProfile, lambda_eff_lookup: LambdaLookup = None,
                       tol: float = 1e-9) -> CoalitionReport:
    si, sj = profile.i, profile.j
    r_i = rmax_agent(si.alpha, si.split.blocking, sj.split.teaching, lambda_eff_lookup)
    r_j = rmax_agent(sj.alpha, sj.split.blocking, si.split.teaching, lambda_eff_lookup)
    po = r_i + r_j
    fo = model_for(si.split.total, lambda_eff_lookup).p + model_for(sj.split.total, lambda_eff_lookup).p
    if abs(po - fo) <= tol:
        kind = "additive"
    elif po > fo:
        kind = "superadditive"
    else:
        kind = "subadditive"
    return CoalitionReport(kind, po, fo, r_i, r_j)


# -- 2x2 symmetric game -----------------------------------------------------------

STRATEGIES = ("A", "B")


@dataclass
class GameMatrix2x2:
    """``payoffs[row, col] = (row player's payoff, column player's payoff)``."""

    alpha_a: float
    gamma_a: float
    alpha_b: float
    gamma_b: float
    payoffs: np.ndarray

    @property
    def a(self) -> float:
        return float(self.payoffs[0, 0, 0])

    @property
    def b(self) -> float:
        return float(self.payoffs[1, 1, 0])

    @property
    def c(self) -> float:
        return float(self.payoffs[0, 1, 0])

    @property
    def d(self) -> float:
        return float(self.payoffs[0, 1, 1])

    def payoff(self, row: int, col: int, player: int) -> float:
        return float(self.payoffs[row, col, player])

    def transposed(self) -> "GameMatrix2x2":
        """The same game with the players' seats swapped."""
        swapped = self.payoffs.transpose(1, 0, 2)[:, :, ::-1].copy()
        return GameMatrix2x2(self.alpha_a, self.gamma_a, self.alpha_b, self.gamma_b, swapped)


def game_from_payoffs(a: float, b: float, c: float, d: float) -> GameMatrix2x2:
    pay = np.array([[[a, a], [c, d]], [[d, c], [b, b]]], dtype=float)
    return GameMatrix2x2(np.nan, np.nan, np.nan, np.nan, pay)


def build_game(alpha_a: float, gamma_a: float, alpha_b: float, gamma_b: float, total_gamma: float = 1.0,
               lambda_eff_lookup: LambdaLookup = None, mode: str = "closed-form", **mc_kw) -> GameMatrix2x2:
    """Strategy X plays blocking ``gamma_X`` and teaching ``total - gamma_X`` at observability ``alpha_X``."""
    for g in (gamma_a, gamma_b):
        if not 0.0 <= g <= total_gamma:
            raise ValueError(f"blocking factor {g} outside [0, {total_gamma}]")
    teach_a, teach_b = total_gamma - gamma_a, total_gamma - gamma_b
    r = lambda al, block, teach: rmax_agent(al, block, teach, lambda_eff_lookup, mode, **mc_kw)
    a = r(alpha_a, gamma_a, teach_a)
    b = r(alpha_b, gamma_b, teach_b)
    c = r(alpha_a, gamma_a, teach_b)
    d = r(alpha_b, gamma_b, teach_a)
    game = game_from_payoffs(a, b, c, d)
    game.alpha_a, game.gamma_a, game.alpha_b, game.gamma_b = alpha_a, gamma_a, alpha_b, gamma_b
    return game


@dataclass
class GameAnalysis:
    nash: List[Tuple[str, str]]
    pareto: List[Tuple[str, str]]
    strictly_dominant: Tuple[Optional[str], Optional[str]]
    weakly_dominant: Tuple[Optional[str], Optional[str]]

    def pareto_dominates(self, game: GameMatrix2x2, x: Tuple[str, str], y: Tuple[str, str]) -> bool:
        return _pareto_dominates(game, _idx(x), _idx(y))


def _idx(profile: Tuple[str, str]) -> Tuple[int, int]:
    return STRATEGIES.index(profile[0]), STRATEGIES.index(profile[1])


def _pareto_dominates(game: GameMatrix2x2, x, y) -> bool:
    px, py = game.payoffs[x], game.payoffs[y]
    return bool(np.all(px >= py) and np.any(px > py))


def _dominant(game: GameMatrix2x2, player: int, strict: bool) -> Optional[str]:
    def pay(own, other):
        return game.payoffs[own, other, 0] if player == 0 else game.payoffs[other, own, 1]

    for own in (0, 1):
        alt = 1 - own
        diffs = [pay(own, o) - pay(alt, o) for o in (0, 1)]
        if strict and all(x > 0 for x in diffs):
            return STRATEGIES[own]
        if not strict and all(x >= 0 for x in diffs) and any(x > 0 for x in diffs):
            return STRATEGIES[own]
    return None


def analyze_game(game: GameMatrix2x2) -> GameAnalysis:
    """Enumerate the four pure profiles; ties never count as strict."""
    if not np.all(np.isfinite(game.payoffs)):
        raise ValueError("payoffs must be finite")
    profiles = list(itertools.product((0, 1), repeat=2))
    nash = []
    for r, c in profiles:
        row_ok = game.payoffs[r, c, 0] >= game.payoffs[1 - r, c, 0]
        col_ok = game.payoffs[r, c, 1] >= game.payoffs[r, 1 - c, 1]
        if row_ok and col_ok:
            nash.append((STRATEGIES[r], STRATEGIES[c]))
    pareto = [(STRATEGIES[x[0]], STRATEGIES[x[1]]) for x in profiles
              if not any(_pareto_dominates(game, y, x) for y in profiles if y != x)]
    strict = (_dominant(game, 0, True), _dominant(game, 1, True))
    weak = (_dominant(game, 0, False), _dominant(game, 1, False))
    return GameAnalysis(nash, pareto, strict, weak)


def format_game_report(game: GameMatrix2x2, analysis: GameAnalysis) -> str:
    lines = [
        f"strategy A: alpha={game.alpha_a:g}, blocking gamma={game.gamma_a:g}",
        f"strategy B: alpha={game.alpha_b:g}, blocking gamma={game.gamma_b:g}",
        "",
        "            A                     B",
    ]
    for r, name in enumerate(STRATEGIES):
        cells = ["({:.6f}, {:.6f})".format(*game.payoffs[r, c]) for c in (0, 1)]
        lines.append(f"  {name}   " + "  ".join(cells))
    lines += [
        "",
        f"a={game.a:.6f} b={game.b:.6f} c={game.c:.6f} d={game.d:.6f}",
        "pure Nash equilibria: " + (", ".join("(%s,%s)" % p for p in analysis.nash) or "none"),
        "Pareto optimal: " + ", ".join("(%s,%s)" % p for p in analysis.pareto),
        f"strictly dominant: row={analysis.strictly_dominant[0]}, column={analysis.strictly_dominant[1]}",
    ]
    return "\n".join(lines) + "\n"
