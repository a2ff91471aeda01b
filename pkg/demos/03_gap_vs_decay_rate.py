#!/usr/bin/env python3
"""The spectral gap need not fall monotonically with the decay rate.

Intuition says slower tie decay (small alpha) always means faster
consensus, and each individual interval factor does behave that way.
But the product of factors can conspire: this bundled 4-node stream has
a window of decay rates where increasing alpha *increases* the gap.
"""

from pathlib import Path

import numpy as np

from tiedyn import parse_events
from tiedyn.experiments import ExperimentConfig, run_alpha_sweep

fixture = Path(__file__).parents[1] / "tests/fixtures/nonmonotone_stream.txt"
stream = parse_events(fixture.read_text())
print(fixture.read_text())

config = ExperimentConfig(alphas=list(np.geomspace(1e-3, 1e2, 40)))
records = run_alpha_sweep(stream, config)

print(f"{'alpha':>10s} {'gap':>10s}  slope")
for r in records:
    marker = "  <-- positive slope" if "positive_slope" in r.flags else ""
    print(f"{r.alpha:10.4f} {r.gap:10.6f}{marker}")
