"""Command-line front end.

Every subcommand writes one CSV document: a header naming columns with their
units, data rows at 12 significant digits, and a ``#`` footer recording the
scenario, package version and the exact arguments needed to regenerate it.

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 failed check.
"""
from __future__ import annotations

import argparse
import io
import logging
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .device import ChargeQubitParams, derive, feasibility
from .errors import AntiZenoError, DegeneracyError, DomainError, NumericError
from .exact import ExactParams, ExactSolution
from .model import BARE, PHYSICAL, SystemParams, interacting_spectrum, shifted_frequency
from .oracle import evolve
from .rates import golden_rule_rate, rate_scan

log = logging.getLogger("antizeno")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_CHECK = 0, 2, 3, 4

EDGE_OMEGAS = (1.198, 1.2, 1.203)
EDGE_NUDGE = 1e-9


class UsageError(AntiZenoError):
    pass


@dataclass
class CsvDocument:
    columns: list
    rows: list = field(default_factory=list)
    footer: dict = field(default_factory=dict)

    def render(self):
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError("row length does not match header")
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        for key, value in self.footer.items():
            buf.write(f"# {key}: {value}\n")
        return buf.getvalue()


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(v)
    return f"{float(v) + 0.0:.12g}"


def read_csv(path):
    """Parse a document written by this tool into ``(columns, array, footer)``."""
    columns, rows, footer = None, [], {}
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(": ")
                footer[key] = value
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append([float(x) for x in line.split(",")])
    return columns, np.array(rows, dtype=float).reshape(-1, len(columns or [])), footer


def _write(doc: CsvDocument, path):
    text = doc.render()
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".antizeno-", suffix=".csv")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _footer(name, argv):
    return {"scenario": name, "version": f"antizeno {__version__}",
            "args": " ".join([name] + list(argv))}


def _grid(lo, hi, n, log_spaced=False):
    if n is None or n < 1:
        raise UsageError("grid must contain at least one point")
    if n > 1 and not hi > lo:
        raise UsageError("grid maximum must exceed its minimum")
    if log_spaced:
        if lo <= 0:
            raise UsageError("log grid needs a positive minimum")
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _system(args, Omega_default):
    Omega = Omega_default if args.Omega is None else args.Omega
    try:
        return SystemParams.from_values(args.omega0, args.zeta, args.g, Omega)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _check_writable(path):
    if path in (None, "-"):
        return
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory) or not os.access(directory, os.W_OK):
        raise UsageError(f"cannot write to {path}")


def cmd_spectrum(args, argv):
    p = _system(args, 2.0)
    omega = _grid(args.omega_min, args.omega_max, args.omega_points)
    band = p.bath.band
    for edge, step in ((band.lo, EDGE_NUDGE), (band.hi, -EDGE_NUDGE)):
        hit = omega == edge
        if np.any(hit):
            log.warning("grid point on band edge %g moved inward by %g", edge, EDGE_NUDGE)
            omega = np.where(hit, edge + step, omega)
    bare = interacting_spectrum(p, BARE, omega)
    phys = interacting_spectrum(p, PHYSICAL, omega)
    doc = CsvDocument(["omega (freq)", "G_bare (freq)", "G_physical (freq)"],
                      footer=_footer("spectrum", argv))
    doc.rows = [list(r) for r in zip(np.atleast_1d(omega), np.atleast_1d(bare), np.atleast_1d(phys))]
    doc.footer["params"] = _params_text(p.as_dict())
    return [(doc, args.out)]


def cmd_zeno_scan(args, argv):
    p = _system(args, 2.0)
    taus = _grid(args.tau_min, args.tau_max, args.tau_points, args.log)
    if np.any(taus <= 0):
        raise UsageError("measurement intervals must be positive")
    bare = rate_scan(p, BARE, taus)
    phys = rate_scan(p, PHYSICAL, taus)
    rg_b = golden_rule_rate(p, BARE)
    rg_p = golden_rule_rate(p, PHYSICAL)
    doc = CsvDocument(["tau (1/freq)", "R_bare (freq)", "R_physical (freq)",
                       "R_G_bare (freq)", "R_G_physical (freq)"],
                      footer=_footer("zeno-scan", argv))
    doc.rows = [[t, rb, rp, rg_b, rg_p] for t, rb, rp in zip(taus, bare.rates, phys.rates)]
    doc.footer["params"] = _params_text(p.as_dict())
    if args.n_measurements:
        n = args.n_measurements
        doc.columns += ["P_bare (1)", "P_physical (1)"]
        for row in doc.rows:
            row += [math.exp(-row[1] * n * row[0]), math.exp(-row[2] * n * row[0])]
        doc.footer["survival"] = f"exp(-R n tau) with n={n}, second-order perturbation theory"
    return [(doc, args.out)]


def _exact_params(args, Omega):
    try:
        return ExactParams(args.omega0, args.zeta, args.g, Omega)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _suffixed(path, Omega):
    if path in (None, "-"):
        return path
    root, ext = os.path.splitext(path)
    return f"{root}_Omega{Omega:g}{ext or '.csv'}"


def _effective_omegas(args, default):
    omegas = default if args.Omega is None else (args.Omega,)
    if args.state is None:
        return omegas
    if args.state == "physical":
        raise UsageError("the exact solution assumes uniform couplings; only --state bare applies")
    return tuple(shifted_frequency(_system(args, Om), BARE) for Om in omegas)


def cmd_exact(args, argv):
    omegas = _effective_omegas(args, EDGE_OMEGAS)
    ts = _grid(0.0, args.t_max, args.t_points)
    params = [_exact_params(args, Om) for Om in omegas]
    out = []
    for ep in params:
        sol = ExactSolution(ep)
        surv = sol.survival(ts).values
        rate = sol.rate(ts).values
        doc = CsvDocument(["t (1/freq)", "survival (1)", "rate (freq)"],
                          footer=_footer("exact", argv))
        doc.rows = [list(r) for r in zip(ts, surv, rate)]
        doc.footer["params"] = _params_text(dict(omega0=ep.omega0, zeta=ep.zeta, g=ep.g,
                                                 Omega_eff=ep.Omega_eff))
        doc.footer["poles"] = (f"E1={sol.poles.E1:.12g} E2={sol.poles.E2:.12g} "
                               f"A1={sol.poles.A1:.12g} A2={sol.poles.A2:.12g}")
        path = args.out if len(omegas) == 1 else _suffixed(args.out, ep.Omega_eff)
        out.append((doc, path))
    return out


def cmd_oracle_check(args, argv):
    (Omega,) = _effective_omegas(args, (1.203,))
    ep = _exact_params(args, Omega)
    ts = _grid(0.0, args.t_max, args.t_points)
    steps = args.t_max / args.dt
    stride = steps / max(args.t_points - 1, 1)
    if not (math.isclose(steps, round(steps)) and math.isclose(stride, round(stride))):
        raise UsageError("t-max/dt and the number of output intervals must divide evenly")
    try:
        run = evolve(ep, args.N, args.dt, args.t_max, stride=int(round(stride)))
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    exact = ExactSolution(ep).survival(ts).values
    oracle = run.series.values
    diff = np.abs(exact - oracle)
    doc = CsvDocument(["t (1/freq)", "survival_exact (1)", "survival_oracle (1)", "abs_diff (1)"],
                      footer=_footer("oracle-check", argv))
    doc.rows = [list(r) for r in zip(ts, exact, oracle, diff)]
    worst = float(diff.max())
    passed = worst <= args.tol
    doc.footer["params"] = _params_text(dict(omega0=ep.omega0, zeta=ep.zeta, g=ep.g,
                                             Omega_eff=ep.Omega_eff, N=args.N, dt=args.dt))
    doc.footer["result"] = (f"{'PASS' if passed else 'FAIL'} max_abs_diff={worst:.3e} "
                            f"tol={args.tol:g} norm_drift={run.norm_drift:.3e}")
    print(f"oracle-check: {doc.footer['result']}", file=sys.stderr)
    return [(doc, args.out)], (EXIT_OK if passed else EXIT_CHECK)


def cmd_device(args, argv):
    try:
        q = ChargeQubitParams(EJ=args.EJ, ng=args.ng, flux_ratio=args.flux_ratio, Cg=args.Cg,
                              CJ=args.CJ, omega0=args.resonator_omega0, L=args.L, c=args.c,
                              Ec=args.Ec, charge=args.charge)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    d = derive(q)
    rep = feasibility(q.omega0, d.Omega)
    doc = CsvDocument(["Bx (energy)", "Bz (energy)", "Omega (energy)", "theta (rad)", "g (energy)",
                       "omega0_in_window", "Omega_in_window"], footer=_footer("device", argv))
    doc.rows = [[d.Bx, d.Bz, d.Omega, d.theta, d.g, rep.omega0_ok, rep.Omega_ok]]
    doc.footer["windows"] = "omega0 5-10 GHz, Omega 5-15 GHz"
    return [(doc, args.out)]


def _params_text(values):
    return " ".join(f"{k}={_fmt(v)}" for k, v in values.items())


def _physics_flags(sub, state=False, omega0=1.0, zeta=0.1, g=0.1):
    sub.add_argument("--omega0", type=float, default=omega0, help="band centre")
    sub.add_argument("--zeta", type=float, default=zeta, help="hopping strength")
    sub.add_argument("--g", type=float, default=g, help="collective coupling")
    sub.add_argument("--Omega", type=float, default=None, help="atomic level spacing")
    if state:
        sub.add_argument("--state", choices=("bare", "physical"), default=None,
                         help="treat --Omega as the bare spacing and use this state's shifted level")
    sub.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")


def build_parser():
    parser = argparse.ArgumentParser(prog="antizeno", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"antizeno {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="interacting spectrum G(omega), bare and physical")
    _physics_flags(sp)
    sp.add_argument("--omega-min", type=float, default=0.75)
    sp.add_argument("--omega-max", type=float, default=1.25)
    sp.add_argument("--omega-points", type=int, default=2001)

    zs = subs.add_parser("zeno-scan", help="measured decay rate R(tau) for both states")
    _physics_flags(zs)
    zs.add_argument("--tau-min", type=float, default=0.5)
    zs.add_argument("--tau-max", type=float, default=100.0)
    zs.add_argument("--tau-points", type=int, default=200)
    zs.add_argument("--log", action=argparse.BooleanOptionalAction, default=True)
    zs.add_argument("--n-measurements", type=int, default=0,
                    help="also report exp(-R n tau) for this many measurements")

    ex = subs.add_parser("exact", help="exact survival probability and instantaneous rate")
    _physics_flags(ex, state=True)
    ex.add_argument("--t-max", type=float, default=200.0)
    ex.add_argument("--t-points", type=int, default=2001)

    oc = subs.add_parser("oracle-check", help="exact solution against the RK4 N-mode integrator")
    _physics_flags(oc, state=True)
    oc.add_argument("--t-max", type=float, default=200.0)
    oc.add_argument("--t-points", type=int, default=2001)
    oc.add_argument("--N", type=int, default=2048)
    oc.add_argument("--dt", type=float, default=0.01)
    oc.add_argument("--tol", type=float, default=5e-3)

    dv = subs.add_parser("device", help="charge-qubit parameters to model parameters")
    dv.add_argument("--EJ", type=float, required=True)
    dv.add_argument("--ng", type=float, required=True)
    dv.add_argument("--flux-ratio", type=float, default=0.0)
    dv.add_argument("--Ec", type=float, default=None)
    dv.add_argument("--Cg", type=float, default=1.0)
    dv.add_argument("--CJ", type=float, default=1.0)
    dv.add_argument("--charge", type=float, default=1.0, help="elementary charge in caller units")
    dv.add_argument("--resonator-omega0", type=float, default=7.5, help="resonator frequency, GHz")
    dv.add_argument("--L", type=float, default=1.0)
    dv.add_argument("--c", type=float, default=1.0)
    dv.add_argument("--out", default="-")
    return parser


COMMANDS = {
    "spectrum": cmd_spectrum,
    "zeno-scan": cmd_zeno_scan,
    "exact": cmd_exact,
    "oracle-check": cmd_oracle_check,
    "device": cmd_device,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if hasattr(args, "out"):
            _check_writable(args.out)
        result = COMMANDS[args.command](args, argv[1:])
        status = EXIT_OK
        if isinstance(result, tuple):
            result, status = result
        for doc, path in result:
            _write(doc, path)
        return status
    except (UsageError, DegeneracyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
