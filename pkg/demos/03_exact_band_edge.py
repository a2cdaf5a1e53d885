"""Exact dynamics when the level sits right at the upper band edge.

Three spacings straddling omega0 + 2 zeta = 1.2 give nearly the same
survival curve: a fast initial drop, damped oscillations, then a plateau
near A1^2 + A2^2 set by the two bound states outside the band. The
instantaneous rate stays finite and swings through negative values, where
population flows back into the emitter.
"""
import numpy as np

from antizeno import ExactParams, ExactSolution

t = np.linspace(0.0, 200.0, 2001)
for Om in (1.198, 1.2, 1.203):
    sol = ExactSolution(ExactParams(1.0, 0.1, 0.1, Om))
    s = sol.survival(t).values
    r = sol.rate(t).values
    A1, A2 = sol.A
    tail = s[t >= 150].mean()
    print(f"Omega_eff={Om}: E1={sol.poles.E1:.6f} E2={sol.poles.E2:.6f} A1={A1:.4f} A2={A2:.2e}")
    print(f"   continuum weight {sol.continuum_weight:.4f}, plateau A1^2+A2^2={A1**2 + A2**2:.4f}, "
          f"mean |alpha|^2 on [150,200]={tail:.4f}")
    print(f"   rate range [{r.min():.4f}, {r.max():.4f}], first dip of survival {s.min():.4f}")
