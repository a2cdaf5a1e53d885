"""From a Cooper-pair box to model parameters.

A charge qubit biased at gate charge ng and flux ratio Phi_x/Phi_0 behaves
as a two-level system with fields Bx = 4 Ec (2 ng - 1) and
Bz = 2 EJ cos(pi Phi_x/Phi_0). Its spacing and mixing angle decide the level
spacing Omega and how strongly it couples to the resonator array.
Energies below are in GHz (hbar = 1).
"""
from antizeno.device import ChargeQubitParams, derive, feasibility

for ng, flux in ((0.5, 0.0), (0.55, 0.2), (0.7, 0.35)):
    q = ChargeQubitParams(EJ=5.0, ng=ng, flux_ratio=flux, Cg=0.2, CJ=1.0, omega0=7.5,
                          L=1.0, c=1.0, Ec=5.0, charge=0.05)
    d = derive(q)
    rep = feasibility(q.omega0, d.Omega)
    print(f"ng={ng:4.2f} flux={flux:4.2f}: Bx={d.Bx:6.2f} Bz={d.Bz:6.2f} Omega={d.Omega:6.2f} "
          f"theta={d.theta:+.3f} g={d.g:.4f} feasible={rep.ok}")
