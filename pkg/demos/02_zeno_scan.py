"""Pure anti-Zeno decay: measurements create decay where none existed.

With Omega = 2 the shifted atomic level sits far above the band, so the
unmeasured (golden-rule) rate is exactly zero. Frequent projective
measurements broaden the atomic line by about 1/tau, letting it overlap the
band, and a finite decay rate appears. At very short tau the rate falls again
(Zeno regime); in between it peaks.
"""
import numpy as np

from antizeno import BARE, PHYSICAL, SystemParams, golden_rule_rate, rate_scan

p = SystemParams.from_values(omega0=1.0, zeta=0.1, g=0.1, Omega=2.0)
print(f"golden-rule rate: bare {golden_rule_rate(p, BARE)}, physical {golden_rule_rate(p, PHYSICAL)}\n")

taus = np.geomspace(0.5, 100.0, 12)
bare = rate_scan(p, BARE, taus).rates
phys = rate_scan(p, PHYSICAL, taus).rates
print(f"{'tau':>8} {'R_bare':>11} {'R_physical':>11} {'tau g^2':>9}")
for t, rb, rp in zip(taus, bare, phys):
    print(f"{t:8.3f} {rb:11.3e} {rp:11.3e} {t * 0.01:9.4f}")

print("\nthe dressed state decays faster than the bare one at every interval;")
print("at the shortest intervals its rate even exceeds tau g^2, because the")
print("reweighted couplings carry about 1.8x the total bare coupling strength.")
