"""Projective-simulation agent on a two-layer clip network (percepts -> actions).

Edge weights ``h`` start at 1.  Each time step every edge relaxes toward 1 by
the forgetting factor ``gamma`` and the edge walked in that step gains the
reward::

    h <- h - gamma * (h - 1) + reward * [edge traversed]

Transition probabilities are the normalised rows of ``h`` (weight function
``f(h) = h``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .rng import RngStream


class ClipKind(enum.Enum):
    WORLD = "world-percept"
    BELIEF = "belief-percept"
    ACTION = "action"


@dataclass(frozen=True)
class ClipId:
    index: int
    kind: ClipKind = ClipKind.WORLD

    @property
    def is_percept(self) -> bool:
        return self.kind is not ClipKind.ACTION


@dataclass(frozen=True)
class AgentConfig:
    gamma: float = 0.0
    reward_unit: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if self.reward_unit < 0:
            raise ValueError(f"reward_unit must be non-negative, got {self.reward_unit}")


PerceptLike = Union[int, ClipId]


def probs_from_weights(h: np.ndarray) -> np.ndarray:
    """Normalise the last axis of a weight array."""
    return h / h.sum(axis=-1, keepdims=True)


def inverse_cdf(probs: np.ndarray, u) -> np.ndarray:
    """Pick the first index whose cumulative probability exceeds ``u``.

    Works row-wise on ``probs[..., A]`` with ``u`` broadcast over the leading
    axes.  A uniform row of two actions maps ``u < 0.5`` to action 0.
    """
    cdf = np.cumsum(probs, axis=-1)
    u = np.asarray(u)[..., None]
    idx = (u >= cdf).sum(axis=-1)
    return np.minimum(idx, probs.shape[-1] - 1)


def relax(h: np.ndarray, gamma: float) -> None:
    """In-place forgetting step applied to every edge."""
    if gamma:
        h -= gamma * (h - 1.0)


class Agent:
    """A single PS agent; ``h`` has shape ``(num_percepts, num_actions)``."""

    def __init__(self, num_percepts: int, num_actions: int, config: Optional[AgentConfig] = None):
        if num_percepts < 1 or num_actions < 1:
            raise ValueError("an agent needs at least one percept and one action clip")
        self.config = config if config is not None else AgentConfig()
        self.h = np.ones((num_percepts, num_actions))

    @property
    def num_percepts(self) -> int:
        return self.h.shape[0]

    @property
    def num_actions(self) -> int:
        return self.h.shape[1]

    def _row(self, percept: PerceptLike) -> int:
        if isinstance(percept, ClipId):
            if not percept.is_percept:
                raise ValueError("transitions start from percept clips, not action clips")
            percept = percept.index
        percept = int(percept)
        if not 0 <= percept < self.num_percepts:
            raise IndexError(f"percept {percept} out of range for {self.num_percepts} percepts")
        return percept

    def transition_probs(self, percept: PerceptLike) -> np.ndarray:
        row = self.h[self._row(percept)]
        return row / row.sum()

    def probs(self) -> np.ndarray:
        """All rows at once, shape ``(num_percepts, num_actions)``."""
        return probs_from_weights(self.h)

    def sample_action(self, percept: PerceptLike, rng: Union[RngStream, float]) -> int:
        """Draw an action; ``rng`` may be a stream or an already drawn uniform."""
        u = rng.uniform() if isinstance(rng, RngStream) else float(rng)
        return int(inverse_cdf(self.transition_probs(percept), u))

    def update(self, traversed: Optional[Tuple[PerceptLike, int]] = None, reward: float = 0.0) -> None:
        if reward < 0:
            raise ValueError("reward must be non-negative")
        if traversed is not None:
            row = self._row(traversed[0])
            col = int(traversed[1])
            if not 0 <= col < self.num_actions:
                raise IndexError(f"action {col} out of range")
        relax(self.h, self.config.gamma)
        if traversed is not None and reward:
            self.h[row, col] += reward

    def copy(self) -> "Agent":
        other = Agent(self.num_percepts, self.num_actions, self.config)
        other.h = self.h.copy()
        return other

    def __repr__(self):
        return (f"Agent(percepts={self.num_percepts}, actions={self.num_actions}, "
                f"gamma={self.config.gamma})")


def new_agent(num_percepts: int, num_actions: int, config: Optional[AgentConfig] = None) -> Agent:
    return Agent(num_percepts, num_actions, config)
