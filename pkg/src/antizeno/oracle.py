"""Brute-force reference: the single-excitation Schroedinger equation on a
finite ring of resonators, integrated with classic fourth-order Runge-Kutta.

The amplitudes obey::

    i d(alpha)/dt  = (Omega/2) alpha + sum_k g_k beta_k
    i d(beta_k)/dt = (omega_k - Omega/2) beta_k + g_k alpha

with ``alpha(0) = 1`` and ``beta_k(0) = 0``. The midpoint k-grid keeps every
mode strictly inside the band.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IntegratorInstabilityError
from .exact import ExactParams, TimeSeries
from .model import (
    BathParams,
    StateVariant,
    SystemParams,
    dispersion,
    modified_coupling_factor,
    shifted_frequency,
)

NORM_DRIFT_LIMIT = 1e-6
DEFAULT_DT = 0.01


@dataclass(frozen=True)
class DiscreteBath:
    N: int
    k: np.ndarray
    omega: np.ndarray
    couplings: np.ndarray

    @classmethod
    def from_params(cls, p: BathParams, N):
        N = int(N)
        if N < 2:
            raise DomainError("need at least two modes")
        k = -np.pi + 2 * np.pi * (np.arange(N) + 0.5) / N
        return cls(N, k, dispersion(p, k), np.full(N, p.g / math.sqrt(N)))


@dataclass
class Amplitudes:
    alpha: complex
    beta: np.ndarray

    @property
    def norm(self):
        return abs(self.alpha) ** 2 + float(np.sum(np.abs(self.beta) ** 2))


@dataclass
class OracleRun:
    params: ExactParams
    N: int
    dt: float
    series: TimeSeries
    norm_drift: float
    final: Amplitudes


@dataclass(frozen=True)
class MeasurementResult:
    """Outcome of ``n`` reset-on-measurement cycles of length ``tau``.

    Each measurement projects back onto the excited product state, so the
    probability of surviving all of them is ``P1 ** n``.
    """

    tau: float
    n: int
    P1: float
    survival: float
    implied_rate: float


def effective_model(p: SystemParams, v: StateVariant, N):
    """Level spacing and per-mode couplings of the effective Hamiltonian.

    The bare state keeps ``g_k = g/sqrt(N)`` at the shifted level ``Omega_1``;
    the physical state uses ``g'_k = 2 Omega g_k / (omega_k + Omega)`` at
    ``Omega'``.
    """
    v = StateVariant.parse(v)
    bath = DiscreteBath.from_params(p.bath, N)
    ep = ExactParams(p.bath.omega0, p.bath.zeta, p.bath.g, shifted_frequency(p, v))
    couplings = bath.couplings
    if v is StateVariant.PHYSICAL:
        couplings = couplings * modified_coupling_factor(p, bath.omega)
    return ep, couplings


def _max_dt(p: ExactParams):
    return 0.1 / (p.omega0 + 2 * p.zeta + p.Omega_eff)


def _integrate(p: ExactParams, N, dt, steps, couplings, stride):
    bath = DiscreteBath.from_params(BathParams(p.omega0, p.zeta, p.g), N)
    gk = bath.couplings if couplings is None else np.asarray(couplings, dtype=float)
    if gk.shape != (bath.N,):
        raise DomainError("couplings must have one entry per mode")
    half = 0.5 * p.Omega_eff
    eps = bath.omega - half

    def rhs(a, b):
        return -1j * (half * a + gk @ b), -1j * (eps * b + gk * a)

    a, b = 1.0 + 0j, np.zeros(bath.N, dtype=complex)
    record = [1.0]
    max_drift = 0.0
    for n in range(1, steps + 1):
        ka1, kb1 = rhs(a, b)
        ka2, kb2 = rhs(a + 0.5 * dt * ka1, b + 0.5 * dt * kb1)
        ka3, kb3 = rhs(a + 0.5 * dt * ka2, b + 0.5 * dt * kb2)
        ka4, kb4 = rhs(a + dt * ka3, b + dt * kb3)
        a = a + dt / 6 * (ka1 + 2 * ka2 + 2 * ka3 + ka4)
        b = b + dt / 6 * (kb1 + 2 * kb2 + 2 * kb3 + kb4)
        if n % stride == 0 or n == steps:
            norm = abs(a) ** 2 + np.vdot(b, b).real
            max_drift = max(max_drift, abs(norm - 1.0))
            if max_drift > NORM_DRIFT_LIMIT:
                raise IntegratorInstabilityError(
                    f"norm drift {max_drift:.3e} at t={n * dt:.6g}", estimate=max_drift)
            if n % stride == 0:
                record.append(abs(a) ** 2)
    return np.array(record), max_drift, Amplitudes(a, b)


def evolve(p: ExactParams, N, dt=DEFAULT_DT, t_max=200.0, couplings=None, stride=1) -> OracleRun:
    """Integrate the amplitude equations from the excited state up to ``t_max``.

    Parameters
    ----------
    p : ExactParams
    N : int
        Number of bath modes.
    dt : float
        RK4 step; must not exceed ``0.1 / (omega0 + 2 zeta + Omega)``.
    t_max : float
        Must stay below the ring recurrence guard ``N / (8 zeta)``.
    couplings : array_like, optional
        Per-mode couplings; defaults to ``g / sqrt(N)``.
    stride : int
        Record ``|alpha|^2`` every ``stride`` steps.
    """
    if dt <= 0 or dt > _max_dt(p) * (1 + 1e-12):
        raise DomainError(f"dt must lie in (0, {_max_dt(p):.4g}]")
    if t_max < 0:
        raise DomainError("t_max must be non-negative")
    if t_max > N / (8 * p.zeta):
        raise DomainError(f"t_max beyond the finite-ring recurrence guard N/(8 zeta)={N / (8 * p.zeta):g}")
    steps = int(round(t_max / dt))
    if not math.isclose(steps * dt, t_max, rel_tol=1e-9, abs_tol=1e-12):
        raise DomainError("t_max must be an integer multiple of dt")
    stride = max(1, int(stride))
    surv, drift, final = _integrate(p, N, dt, steps, couplings, stride)
    ts = dt * stride * np.arange(surv.size)
    if steps % stride:
        ts = ts[: surv.size]
    return OracleRun(p, int(N), dt, TimeSeries(ts, surv, "survival"), drift, final)


def repeated_measurement_survival(p: ExactParams, tau, n=1, N=1024, dt=DEFAULT_DT,
                                  couplings=None) -> MeasurementResult:
    """Survival under ``n`` projective measurements spaced by ``tau``.

    The implied rate is ``-ln(P1) / tau``. The step is shrunk, if needed, so
    that an integer number of steps spans ``tau``.
    """
    if not tau > 0 or int(n) != n or n < 1:
        raise DomainError("need tau > 0 and a positive integer n")
    steps = max(1, math.ceil(tau / dt - 1e-9))
    run = evolve(p, N, tau / steps, tau, couplings=couplings, stride=steps)
    P1 = float(run.series.values[-1])
    return MeasurementResult(float(tau), int(n), P1, P1 ** int(n), -math.log(P1) / tau)


def shift_sums(p: SystemParams, N):
    """Discrete-mode level shifts ``(Omega_1, Omega')`` on the midpoint grid.

    ``Omega_1 = Omega + sum g_k^2/(omega_k + Omega)`` and
    ``Omega' = Omega - 2 Omega sum g_k^2/(omega_k + Omega)^2``.
    """
    bath = DiscreteBath.from_params(p.bath, N)
    Om = p.atom.Omega
    g2 = bath.couplings**2
    s1 = math.fsum(g2 / (bath.omega + Om))
    s2 = math.fsum(g2 / (bath.omega + Om) ** 2)
    return Om + s1, Om - 2 * Om * s2
