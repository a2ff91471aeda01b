"""Continuous-time tie-strength matrix with exponential decay.

Tie strengths decay as db/dt = -alpha*b between events and jump by 1
when an event occurs on the pair. The combinatorial Laplacian is
derived from the weight matrix on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .events import Event

# Weights this small are flushed to exact zero to avoid subnormal drag.
_FLUSH_THRESHOLD = 1e-300


@dataclass(frozen=True)
class TieDecayState:
    """Weighted adjacency of the tie-decay network at ``current_time``."""

    weights: np.ndarray
    current_time: float
    alpha: float
    directed: bool = False

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        w = self.weights
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weights must be a square matrix")
        if np.any(w < 0):
            raise ValueError("negative tie strength")
        if np.any(np.diag(w) != 0):
            raise ValueError("nonzero diagonal in tie strengths")

    @classmethod
    def zeros(cls, n: int, alpha: float, directed: bool = False,
              time: float = 0.0) -> "TieDecayState":
        return cls(np.zeros((n, n)), time, alpha, directed)

    @property
    def node_count(self) -> int:
        return self.weights.shape[0]


def decay_to(state: TieDecayState, t: float) -> TieDecayState:
    """Decay all ties forward to time ``t`` (multiply by e^{-a*dt})."""
    if t < state.current_time:
        raise ValueError(
            f"cannot decay backwards: {t} < {state.current_time}"
        )
    factor = np.exp(-state.alpha * (t - state.current_time))
    w = state.weights * factor
    w[w < _FLUSH_THRESHOLD] = 0.0
    return TieDecayState(w, t, state.alpha, state.directed)


def apply_events(state: TieDecayState, events: Iterable[Event]) -> TieDecayState:
    """Bump tie strengths by 1 per event; events must be at current_time."""
    w = state.weights.copy()
    for ev in events:
        if ev.time != state.current_time:
            raise ValueError(
                f"event at t={ev.time} applied to state at t={state.current_time}"
            )
        w[ev.source, ev.target] += 1.0
        if not state.directed:
            w[ev.target, ev.source] += 1.0
    return TieDecayState(w, state.current_time, state.alpha, state.directed)


def laplacian(state: TieDecayState) -> np.ndarray:
    """Combinatorial Laplacian L = D - B of the current tie weights.

    Row i sums to zero; the diagonal holds node i's weighted out-degree.
    """
    w = state.weights
    L = -w.copy()
    np.fill_diagonal(L, w.sum(axis=1))
    return L
