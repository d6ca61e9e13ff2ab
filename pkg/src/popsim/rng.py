"""Seeded random streams, one per agent."""

from __future__ import annotations

import numpy as np


class RngStream:
    """Uniform draws keyed by ``(seed, stream_id)``.

    Every agent in an ensemble owns its own stream, so an agent's trajectory
    does not depend on how the ensemble is split across workers.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        if seed < 0 or stream_id < 0:
            raise ValueError("seed and stream_id must be non-negative")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def uniform(self) -> float:
        return float(self._gen.random())

    def uniforms(self, shape) -> np.ndarray:
        return self._gen.random(shape)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def stream_block(seed: int, first: int, count: int, shape) -> np.ndarray:
    """Stack ``count`` consecutive per-agent streams into one array.

    Row ``k`` holds exactly the draws ``RngStream(seed, first + k)`` would give
    for ``uniforms(shape)``.
    """
    shape = tuple(np.atleast_1d(shape))
    out = np.empty((count,) + shape)
    for k in range(count):
        out[k] = RngStream(seed, first + k).uniforms(shape)
    return out
