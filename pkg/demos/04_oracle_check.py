"""Trust but verify: the exact solution against brute-force integration.

A ring of N resonators with the emitter on one site is a finite linear
system. Integrating it with RK4 gives an independent survival curve that must
agree with the pole-plus-branch-cut formula until the excitation has had time
to travel around the ring (t ~ N / (8 zeta)).
"""
import time

import numpy as np

from antizeno import ExactParams, ExactSolution
from antizeno.oracle import evolve

p = ExactParams(1.0, 0.1, 0.1, 1.203)
exact = ExactSolution(p)
for N in (256, 1024, 2048):
    t_max = min(200.0, N / (8 * p.zeta))
    start = time.perf_counter()
    run = evolve(p, N, dt=0.01, t_max=t_max, stride=10)
    diff = np.abs(run.series.values - exact.survival(run.series.t).values).max()
    print(f"N={N:5d} t_max={t_max:6.1f}: max|diff|={diff:.2e} norm drift={run.norm_drift:.1e} "
          f"({time.perf_counter() - start:.2f}s)")

print("\nsmall rings, each run to its own recurrence horizon N/(8 zeta):")
for N in (8, 16, 32):
    t_max = N / (8 * p.zeta)
    run = evolve(p, N, dt=0.01, t_max=t_max, stride=10)
    diff = np.abs(run.series.values - exact.survival(run.series.t).values).max()
    print(f"N={N:5d} t_max={t_max:6.1f}: max|diff|={diff:.2e}")
print("longer horizons are refused; the excitation would return from around the ring")
