"""The N-symbol invasion game.

An attacker shows one of ``N`` symbols uniformly at random; the defender
blocks it by picking the one action mapped to that symbol.  The symbol ->
action map may be swapped once at ``switch_time`` to model a changing
environment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .agent import Agent
from .rng import RngStream

SYMBOLS_N2 = ("<=", "=>")
ACTIONS_N2 = ("-", "+")


@dataclass(frozen=True)
class InvasionRules:
    num_symbols: int = 2
    correct_action: Optional[Tuple[int, ...]] = None
    switch_time: Optional[int] = None
    switched_map: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        n = self.num_symbols
        if n < 2:
            raise ValueError("the invasion game needs at least two symbols")
        if self.correct_action is None:
            object.__setattr__(self, "correct_action", tuple(range(n)))
        if self.switch_time is not None and self.switched_map is None:
            # default switch: every symbol now wants the next action along
            shifted = tuple((a + 1) % n for a in self.correct_action)
            object.__setattr__(self, "switched_map", shifted)
        for m in (self.correct_action, self.switched_map):
            if m is None:
                continue
            if len(m) != n or sorted(m) != list(range(n)):
                raise ValueError(f"action map {m} is not a bijection on {n} symbols")

    def active_map(self, t: int) -> Tuple[int, ...]:
        if self.switch_time is not None and t >= self.switch_time:
            return self.switched_map
        return self.correct_action

    def active_map_array(self, t: int) -> np.ndarray:
        return np.asarray(self.active_map(t), dtype=np.intp)


@dataclass
class RoundRecord:
    t: int
    world_symbol: int
    defender_percept: int
    defender_action: int
    defender_reward: float
    blocked: bool
    belief_symbol: Optional[int] = None
    interpreter_reward: Optional[float] = None


def symbol_from_uniform(u: float, n: int) -> int:
    return min(int(u * n), n - 1)


def attacker_draw(rules: InvasionRules, rng: RngStream) -> int:
    return symbol_from_uniform(rng.uniform(), rules.num_symbols)


def reward_for(rules: InvasionRules, t: int, symbol: int, action: int, reward_unit: float = 1.0) -> float:
    return reward_unit if action == rules.active_map(t)[symbol] else 0.0


def run_fo(agent: Agent, rules: InvasionRules, t_max: int, rng: RngStream, t0: int = 1) -> List[RoundRecord]:
    """Play ``t_max`` fully observable rounds, learning after each one.

    Each round consumes two uniforms from ``rng``: symbol, then action.
    """
    n = rules.num_symbols
    if agent.num_percepts != n or agent.num_actions != n:
        raise ValueError(f"agent is {agent.num_percepts}x{agent.num_actions}, game needs {n}x{n}")
    unit = agent.config.reward_unit
    records = []
    for t in range(t0, t0 + t_max):
        u = rng.uniforms(2)
        s = symbol_from_uniform(u[0], n)
        a = agent.sample_action(s, u[1])
        r = reward_for(rules, t, s, a, unit)
        agent.update((s, a), r)
        records.append(RoundRecord(t, s, s, a, r, a == rules.active_map(t)[s]))
    return records
