import numpy as np
import pytest

from tiedyn.events import Event, EventStream


def make_random_stream(seed, n_max=6, max_events=30, directed=False):
    """Seeded random stream with occasional simultaneous events."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    n_events = int(rng.integers(2, max_events + 1))
    times = np.round(np.sort(rng.uniform(0, 50, size=n_events)), 1)
    times -= times[0]
    events = []
    for t in times:
        i, j = rng.choice(n, size=2, replace=False)
        events.append(Event(float(t), int(i), int(j)))
    return EventStream(
        events=tuple(events),
        node_count=n,
        labels=tuple(str(k) for k in range(n)),
        directed=directed,
    )


@pytest.fixture
def two_node_stream():
    """Single edge, events at t=0 and t=20."""
    return EventStream(
        events=(Event(0.0, 0, 1), Event(20.0, 0, 1)),
        node_count=2,
        labels=("a", "b"),
    )
