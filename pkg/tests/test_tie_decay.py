import math

import numpy as np
import pytest

from tiedyn.events import Event, group_event_times
from tiedyn.tie_decay import TieDecayState, apply_events, decay_to, laplacian

from conftest import make_random_stream


def state_with(b01, alpha=1.0, directed=False):
    w = np.zeros((2, 2))
    w[0, 1] = b01
    if not directed:
        w[1, 0] = b01
    return TieDecayState(w, 0.0, alpha, directed)


def test_decay_zero_elapsed():
    s = decay_to(state_with(1.0), 0.0)
    assert s.weights[0, 1] == 1.0


def test_decay_half_life():
    s = decay_to(state_with(1.0, alpha=math.log(2)), 1.0)
    assert s.weights[0, 1] == pytest.approx(0.5, abs=1e-15)


def test_decay_scalar_exponential():
    s = decay_to(state_with(3.0, alpha=0.01), 100.0)
    assert s.weights[0, 1] == pytest.approx(3 * math.exp(-1), abs=1e-12)


def test_decay_rejects_time_travel():
    with pytest.raises(ValueError, match="backwards"):
        decay_to(state_with(1.0), -1.0)


def test_decay_semigroup():
    s = state_with(2.0, alpha=0.7)
    via = decay_to(decay_to(s, 1.3), 4.2)
    direct = decay_to(s, 4.2)
    assert np.allclose(via.weights, direct.weights, atol=1e-12)


def test_decay_flushes_tiny_weights():
    s = decay_to(state_with(1.0), 1e6)
    assert np.all(s.weights == 0.0)


def test_apply_empty_is_noop():
    s = state_with(1.0)
    assert np.array_equal(apply_events(s, []).weights, s.weights)


def test_apply_undirected_bump():
    s = apply_events(TieDecayState.zeros(2, 1.0), [Event(0.0, 0, 1)])
    assert s.weights[0, 1] == 1.0
    assert s.weights[1, 0] == 1.0


def test_apply_directed_bump():
    s = apply_events(TieDecayState.zeros(2, 1.0, directed=True),
                     [Event(0.0, 0, 1)])
    assert s.weights[0, 1] == 1.0
    assert s.weights[1, 0] == 0.0


def test_apply_simultaneous_events_add():
    s = apply_events(TieDecayState.zeros(2, 1.0),
                     [Event(0.0, 0, 1), Event(0.0, 0, 1)])
    assert s.weights[0, 1] == 2.0


def test_apply_time_mismatch():
    with pytest.raises(ValueError, match="t=5.0"):
        apply_events(TieDecayState.zeros(2, 1.0), [Event(5.0, 0, 1)])


def test_laplacian_zero_state():
    assert np.array_equal(laplacian(TieDecayState.zeros(3, 1.0)),
                          np.zeros((3, 3)))


def test_laplacian_two_node():
    L = laplacian(state_with(1.0))
    assert np.array_equal(L, np.array([[1.0, -1.0], [-1.0, 1.0]]))


def _evolve(stream, alpha):
    """Replay a stream through decay/bump, yielding states after events."""
    groups = group_event_times(stream)
    state = TieDecayState.zeros(stream.node_count, alpha, stream.directed,
                                time=groups[0][0])
    for k, (t, evs) in enumerate(groups):
        if k > 0:
            state = decay_to(state, t)
        state = apply_events(state, evs)
        yield t, state


@pytest.mark.parametrize("seed", range(8))
def test_laplacian_row_sums_zero(seed):
    stream = make_random_stream(seed)
    for _, state in _evolve(stream, alpha=0.5):
        assert np.max(np.abs(laplacian(state).sum(axis=1))) < 1e-12


@pytest.mark.parametrize("seed", range(8))
def test_undirected_symmetry_preserved(seed):
    stream = make_random_stream(seed)
    for _, state in _evolve(stream, alpha=2.0):
        assert np.array_equal(state.weights, state.weights.T)


@pytest.mark.parametrize("seed", range(5))
def test_laplacian_recursion_equivalence(seed):
    # evolve the Laplacian directly by the event-time recursion
    # L~(t_n+) = L~(t_{n-1}+) e^{-a dt} + L(t_n) and compare with the
    # Laplacian derived from the weight-matrix path
    alpha = 0.3
    stream = make_random_stream(seed, max_events=10)
    groups = group_event_times(stream)
    n = stream.node_count
    L_rec = np.zeros((n, n))
    t_prev = groups[0][0]
    for k, (t, evs) in enumerate(groups):
        L_rec = L_rec * math.exp(-alpha * (t - t_prev))
        L_step = np.zeros((n, n))
        for ev in evs:
            for i, j in ((ev.source, ev.target), (ev.target, ev.source)):
                L_step[i, j] -= 1.0
                L_step[i, i] += 1.0
        L_rec = L_rec + L_step
        t_prev = t
    states = list(_evolve(stream, alpha))
    L_direct = laplacian(states[-1][1])
    assert np.max(np.abs(L_rec - L_direct)) < 1e-12
