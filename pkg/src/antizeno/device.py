"""Charge-qubit (Cooper-pair box) realisation of the emitter.

Near charge degeneracy the box is a two-level system with effective fields
``Bx = 4 Ec (2 ng - 1)`` and ``Bz = 2 EJ cos(pi Phi_x / Phi_0)``; its level
spacing is ``sqrt(Bx^2 + Bz^2)``. Placed at a voltage antinode of one
resonator in the array, it couples with
``g = e Cg sin(theta) / (Cg + 2 CJ) * sqrt(omega0 / (L c))``.

The module performs unit-agnostic arithmetic. Callers keep energies and
frequencies in one unit (``hbar = 1``) and fold the elementary charge into
``charge``. The feasibility report expects GHz.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegeneracyError, DomainError

#: experimentally accessible windows, GHz
RESONATOR_WINDOW = (5.0, 10.0)
QUBIT_WINDOW = (5.0, 15.0)


@dataclass(frozen=True)
class ChargeQubitParams:
    """Device parameters.

    Either give ``Ec`` directly or leave it ``None`` to derive it from the
    capacitances as ``charge^2 / (2 (Cg + 2 CJ))``.
    """

    EJ: float
    ng: float
    flux_ratio: float
    Cg: float
    CJ: float
    omega0: float
    L: float
    c: float
    Ec: float | None = None
    charge: float = 1.0

    def __post_init__(self):
        for name in ("EJ", "Cg", "CJ", "omega0", "L", "c", "charge"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if self.Ec is not None and not self.Ec > 0:
            raise DomainError("Ec must be positive")

    @property
    def charging_energy(self):
        if self.Ec is not None:
            return self.Ec
        return self.charge**2 / (2 * (self.Cg + 2 * self.CJ))


@dataclass(frozen=True)
class DerivedQubit:
    Bx: float
    Bz: float
    Omega: float
    theta: float
    g: float


@dataclass(frozen=True)
class FeasibilityReport:
    omega0_ok: bool
    Omega_ok: bool

    @property
    def ok(self):
        return self.omega0_ok and self.Omega_ok


def effective_fields(q: ChargeQubitParams):
    """``(Bx, Bz)`` from gate charge and flux bias."""
    Bx = 4 * q.charging_energy * (2 * q.ng - 1)
    # half-integer flux closes the Josephson term exactly, not to 1e-17
    half_odd = (2 * q.flux_ratio) % 2 == 1
    Bz = 0.0 if half_odd else 2 * q.EJ * math.cos(math.pi * q.flux_ratio)
    return Bx, Bz


def level_spacing_and_angle(Bx, Bz):
    """Level spacing ``sqrt(Bx^2 + Bz^2)`` and mixing angle ``arctan(Bx / Bz)``.

    The single-argument arctangent keeps ``theta`` in ``[-pi/2, pi/2]``; at
    ``Bz = 0`` it takes the limiting value ``sign(Bx) pi/2`` so that ``theta``
    stays odd in ``Bx``.
    """
    if Bx == 0 and Bz == 0:
        raise DegeneracyError("level spacing and mixing angle undefined at Bx = Bz = 0")
    Omega = math.hypot(Bx, Bz)
    if Bz == 0:
        theta = math.copysign(0.5 * math.pi, Bx)
    else:
        theta = math.atan(Bx / Bz)
    return Omega, theta


def coupling_strength(q: ChargeQubitParams, theta):
    return q.charge * q.Cg * math.sin(theta) / (q.Cg + 2 * q.CJ) * math.sqrt(q.omega0 / (q.L * q.c))


def feasibility(omega0_ghz, Omega_ghz):
    lo, hi = RESONATOR_WINDOW
    qlo, qhi = QUBIT_WINDOW
    return FeasibilityReport(lo <= omega0_ghz <= hi, qlo <= Omega_ghz <= qhi)


def derive(q: ChargeQubitParams) -> DerivedQubit:
    Bx, Bz = effective_fields(q)
    Omega, theta = level_spacing_and_angle(Bx, Bz)
    return DerivedQubit(Bx, Bz, Omega, theta, coupling_strength(q, theta))
