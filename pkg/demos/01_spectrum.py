"""Where the emitter can couple: the interacting spectrum of the waveguide.

The band of a coupled-resonator array spans [omega0 - 2 zeta, omega0 + 2 zeta].
Inside it the spectrum is flat-ish near the centre and climbs steeply at the
edges (inverse square-root van Hove divergence); outside it is zero. The
physical (dressed) state sees couplings reweighted by 4 Omega^2 / (omega + Omega)^2.
"""
import numpy as np

from antizeno import BARE, PHYSICAL, SystemParams, interacting_spectrum

p = SystemParams.from_values(omega0=1.0, zeta=0.1, g=0.1, Omega=2.0)
print(f"band: [{p.bath.band.lo:g}, {p.bath.band.hi:g}]\n")
print(f"{'omega':>8} {'G_bare':>12} {'G_physical':>12}")
for w in np.array([0.75, 0.8001, 0.85, 0.95, 1.0, 1.05, 1.15, 1.1999, 1.25]):
    print(f"{w:8.4f} {interacting_spectrum(p, BARE, w):12.6f} {interacting_spectrum(p, PHYSICAL, w):12.6f}")

centre = interacting_spectrum(p, BARE, 1.0)
print(f"\nat the band centre G = g^2/(2 pi zeta) = {centre:.7f}")
print(f"one part in 10^4 from the upper edge G is {interacting_spectrum(p, BARE, 1.1999) / centre:.1f}x larger")
