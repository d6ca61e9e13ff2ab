"""Partial observability through an interpreter agent.

The interpreter watches the attacker's symbol ``s`` and emits a belief symbol
``b``; the row-stochastic table ``<b_j|s_i>`` of its transition probabilities
is the belief channel.  With probability ``alpha`` the defender sees ``s``
directly, otherwise it sees ``b``.  Blocking efficiency mixes the two routes::

    r = alpha/N * sum_i <a*_i|s_i> + (1-alpha)/N * sum_ij <a*_i|b_j><b_j|s_i>

By default the defender has one clip per symbol and learns from the symbol it
perceives (``colored=False, reward_basis="perceived"``); efficiency is always
judged against the true symbol.  ``colored=True`` gives belief symbols their
own clips and ``reward_basis="world"`` pays only for truly blocked attacks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .agent import Agent, AgentConfig
from .invasion import InvasionRules, RoundRecord, symbol_from_uniform
from .rng import RngStream

REWARD_BASES = ("perceived", "world")
ROW_TOL = 1e-12


@dataclass(frozen=True)
class ObservabilityConfig:
    alpha: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


class BeliefChannel:
    """``probs[i, j] = <b_j|s_i>``: rows are world symbols, columns beliefs."""

    def __init__(self, probs):
        probs = np.array(probs, dtype=float)
        if probs.ndim != 2:
            raise ValueError("a belief channel is a 2-d table")
        if np.any(probs < 0) or np.any(np.abs(probs.sum(axis=1) - 1.0) > ROW_TOL):
            raise ValueError("belief channel rows must be probability vectors")
        self.probs = probs

    @property
    def num_world(self) -> int:
        return self.probs.shape[0]

    @property
    def num_belief(self) -> int:
        return self.probs.shape[1]

    @classmethod
    def identity(cls, n: int) -> "BeliefChannel":
        return cls(np.eye(n))

    @classmethod
    def uniform(cls, n: int, n_belief: Optional[int] = None) -> "BeliefChannel":
        n_belief = n if n_belief is None else n_belief
        return cls(np.full((n, n_belief), 1.0 / n_belief))

    def __repr__(self):
        return f"BeliefChannel({self.num_world}x{self.num_belief})"


def belief_channel_of(interpreter: Agent) -> BeliefChannel:
    return BeliefChannel(interpreter.probs())


# -- efficiency on probability arrays; leading axes broadcast over agents --

def fo_efficiency_array(p_world: np.ndarray, amap) -> np.ndarray:
    """Mean probability of the correct action over world rows ``p_world[..., N, A]``."""
    amap = np.asarray(amap)
    n = amap.shape[0]
    return p_world[..., np.arange(n), amap].mean(axis=-1)


def po_efficiency_array(p_belief: np.ndarray, channel: np.ndarray, amap) -> np.ndarray:
    """``1/N sum_ij <a*_i|b_j><b_j|s_i>`` for belief rows ``p_belief[..., N', A]``."""
    amap = np.asarray(amap)
    n = amap.shape[0]
    # correct[..., j, i] = <a*_{s_i}|b_j>
    correct = p_belief[..., :, amap]
    return np.einsum("...ij,...ji->...", channel, correct) / n


def _world_and_belief_rows(defender_probs: np.ndarray, n: int):
    rows = defender_probs.shape[-2]
    if rows == n:
        return defender_probs, defender_probs
    if rows == 2 * n:
        return defender_probs[..., :n, :], defender_probs[..., n:, :]
    raise ValueError(f"defender with {rows} percept rows does not fit {n} symbols")


def _amap(rules: InvasionRules, t: Optional[int]) -> np.ndarray:
    return np.asarray(rules.correct_action if t is None else rules.active_map(t))


def efficiency_fo(defender: Agent, rules: InvasionRules, t: Optional[int] = None) -> float:
    world, _ = _world_and_belief_rows(defender.probs(), rules.num_symbols)
    return float(fo_efficiency_array(world, _amap(rules, t)))


def efficiency_po_absolute(defender: Agent, channel: BeliefChannel, rules: InvasionRules,
                           t: Optional[int] = None) -> float:
    n = rules.num_symbols
    if channel.num_world != n:
        raise ValueError("channel rows must match the number of world symbols")
    _, belief = _world_and_belief_rows(defender.probs(), n)
    if belief.shape[0] != channel.num_belief:
        raise ValueError("defender belief rows must match the channel's belief symbols")
    return float(po_efficiency_array(belief, channel.probs, _amap(rules, t)))


def efficiency_mixed_complex(defender: Agent, channel: BeliefChannel, rules: InvasionRules,
                             alpha: float, t: Optional[int] = None) -> complex:
    """Efficiency from the complex generic belief state, before taking the real part.

    Each symbol ``j`` gets the state ``sqrt(alpha)|s_j> + i sqrt(1-alpha)|b_j>``;
    the efficiency is ``1/N sum_ij <a*_i|psi_j><psi_j|s_i>``.  The mixed
    ``|b><s|`` terms land on the imaginary axis.
    """
    n = rules.num_symbols
    amap = _amap(rules, t)
    world, belief = _world_and_belief_rows(defender.probs(), n)
    ch = channel.probs
    sa, sb = np.sqrt(alpha), 1j * np.sqrt(1.0 - alpha)
    total = 0j
    for i in range(n):
        for j in range(channel.num_belief):
            bra_psi = sa * world[j, amap[i]] + sb * belief[j, amap[i]] if j < n else sb * belief[j, amap[i]]
            psi_ket = sa * (1.0 if i == j else 0.0) + np.conj(sb) * ch[i, j]
            total += bra_psi * psi_ket
    return total / n


def efficiency_mixed(defender: Agent, channel: BeliefChannel, rules: InvasionRules,
                     alpha: float, t: Optional[int] = None, check: bool = True) -> float:
    ObservabilityConfig(alpha)
    fo = efficiency_fo(defender, rules, t)
    po = efficiency_po_absolute(defender, channel, rules, t)
    value = alpha * fo + (1.0 - alpha) * po
    if check:
        via_complex = efficiency_mixed_complex(defender, channel, rules, alpha, t).real
        if abs(via_complex - value) > 1e-12:
            raise ArithmeticError(f"complex-form efficiency {via_complex} != {value}")
    return value


class TwoAgentSystem:
    """A defender fed partly by an interpreter.  The two clip networks never touch."""

    def __init__(self, defender: Agent, interpreter: Agent, config: ObservabilityConfig,
                 reward_basis: str = "perceived"):
        n = interpreter.num_percepts
        if interpreter.num_actions != n:
            raise ValueError("interpreter must emit one belief symbol per world symbol")
        if defender.num_percepts not in (n, 2 * n) or defender.num_actions != n:
            raise ValueError(f"defender shape {defender.h.shape} does not fit {n} symbols")
        if reward_basis not in REWARD_BASES:
            raise ValueError(f"reward_basis must be one of {REWARD_BASES}")
        if defender.h is interpreter.h:
            raise ValueError("defender and interpreter must not share a clip network")
        self.defender = defender
        self.interpreter = interpreter
        self.config = config
        self.reward_basis = reward_basis

    @classmethod
    def create(cls, num_symbols: int = 2, gamma_d: float = 0.0, gamma_i: float = 0.0,
               alpha: float = 0.0, colored: bool = False, reward_basis: str = "perceived",
               reward_unit: float = 1.0) -> "TwoAgentSystem":
        rows = 2 * num_symbols if colored else num_symbols
        defender = Agent(rows, num_symbols, AgentConfig(gamma_d, reward_unit))
        interpreter = Agent(num_symbols, num_symbols, AgentConfig(gamma_i, reward_unit))
        return cls(defender, interpreter, ObservabilityConfig(alpha), reward_basis)

    @property
    def num_symbols(self) -> int:
        return self.interpreter.num_percepts

    @property
    def colored(self) -> bool:
        return self.defender.num_percepts == 2 * self.num_symbols

    def belief_clip(self, b: int) -> int:
        return b + self.num_symbols if self.colored else b

    def channel(self) -> BeliefChannel:
        return belief_channel_of(self.interpreter)

    def efficiency(self, rules: InvasionRules, t: Optional[int] = None) -> float:
        return efficiency_mixed(self.defender, self.channel(), rules, self.config.alpha, t)


def step_po(system: TwoAgentSystem, rules: InvasionRules, t: int, rng: RngStream) -> RoundRecord:
    """One round; consumes four uniforms: symbol, visibility coin, interpreter, defender."""
    n = system.num_symbols
    if rules.num_symbols != n:
        raise ValueError("rules and system disagree on the number of symbols")
    u = rng.uniforms(4)
    s = symbol_from_uniform(u[0], n)
    direct = u[1] < system.config.alpha
    b = system.interpreter.sample_action(s, u[2])
    r_i = system.interpreter.config.reward_unit if b == s else 0.0
    percept = s if direct else system.belief_clip(b)
    a = system.defender.sample_action(percept, u[3])
    amap = rules.active_map(t)
    blocked = a == amap[s]
    if system.reward_basis == "world":
        hit = blocked
    else:
        hit = a == amap[s if direct else b]
    r_d = system.defender.config.reward_unit if hit else 0.0
    system.interpreter.update((s, b), r_i)
    system.defender.update((percept, a), r_d)
    return RoundRecord(t, s, percept, a, r_d, bool(blocked),
                       belief_symbol=None if direct else b, interpreter_reward=r_i)


def run_po(system: TwoAgentSystem, rules: InvasionRules, t_max: int, rng: RngStream, t0: int = 1):
    return [step_po(system, rules, t, rng) for t in range(t0, t0 + t_max)]
