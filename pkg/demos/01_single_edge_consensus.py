#!/usr/bin/env python3
"""Two people, one conversation: the simplest tie-decay network.

A single event at t=0 creates a tie that decays at rate alpha. The
opinion map over [0, t] has a closed form, so we can watch the numeric
propagator land exactly on the analytic answer.
"""

import math

import numpy as np

from tiedyn import evolve_opinions, parse_events, propagate, spectral_gap

stream = parse_events("0 alice bob")
alpha = 1.0

print("t      gap(M(t))   analytic")
for t in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0):
    gap = spectral_gap(propagate(stream, alpha, upto=t).matrix)
    analytic = 1 - math.exp(2 * math.expm1(-alpha * t) / alpha)
    print(f"{t:5.1f}  {gap:.8f}  {analytic:.8f}")

# As t -> inf the remaining disagreement freezes: the tie decays away
# before consensus completes. The limit splits the initial difference.
x = evolve_opinions(np.array([1.0, 0.0]), stream, alpha, upto=1e9)
print("\nopinions at t -> inf:", x)
print("analytic limit:       ",
      [(1 + math.exp(-2)) / 2, (1 - math.exp(-2)) / 2])
