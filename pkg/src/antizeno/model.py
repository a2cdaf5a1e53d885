"""Static model quantities for an emitter coupled to a coupled-resonator bath.

The bath is a ring of ``N`` resonators with nearest-neighbour hopping
``zeta``; its modes follow ``omega_k = omega0 - 2*zeta*cos(k)`` and couple to
the two-level atom with equal strength ``g/sqrt(N)``. All quantities use
``hbar = 1``; frequencies share whatever unit the caller picks.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, EdgeSingularityError


class StateVariant(enum.Enum):
    """Which initial excited state the rate formulas refer to.

    ``BARE`` is the product state ``|e, vac>``; ``PHYSICAL`` is the state
    dressed by the counter-rotating terms, which sees a downward-shifted level
    and frequency-dependent couplings.
    """

    BARE = "bare"
    PHYSICAL = "physical"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown state variant {value!r}") from None


BARE = StateVariant.BARE
PHYSICAL = StateVariant.PHYSICAL


@dataclass(frozen=True)
class Band:
    lo: float
    hi: float

    def interior(self, omega):
        return (self.lo < omega) & (omega < self.hi)

    @property
    def width(self):
        return self.hi - self.lo


@dataclass(frozen=True)
class BathParams:
    """Coupled-resonator bath.

    Parameters
    ----------
    omega0 : float
        Band centre.
    zeta : float
        Hopping strength; the band is ``[omega0 - 2 zeta, omega0 + 2 zeta]``.
    g : float
        Collective coupling; each mode couples with ``g / sqrt(N)``.
    """

    omega0: float = 1.0
    zeta: float = 0.1
    g: float = 0.1

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if not self.zeta > 0:
            raise DomainError(f"zeta must be positive, got {self.zeta}")
        if not self.g >= 0:
            raise DomainError(f"g must be non-negative, got {self.g}")
        if not self.omega0 - 2 * self.zeta > 0:
            raise DomainError("band lower edge omega0 - 2*zeta must be positive")

    @property
    def band(self):
        return Band(self.omega0 - 2 * self.zeta, self.omega0 + 2 * self.zeta)


@dataclass(frozen=True)
class AtomParams:
    Omega: float = 2.0

    def __post_init__(self):
        if not self.Omega > 0:
            raise DomainError(f"Omega must be positive, got {self.Omega}")


@dataclass(frozen=True)
class SystemParams:
    bath: BathParams
    atom: AtomParams

    @classmethod
    def from_values(cls, omega0=1.0, zeta=0.1, g=0.1, Omega=2.0):
        return cls(BathParams(omega0, zeta, g), AtomParams(Omega))

    def replace(self, **changes):
        values = dict(omega0=self.bath.omega0, zeta=self.bath.zeta,
                      g=self.bath.g, Omega=self.atom.Omega)
        values.update(changes)
        return SystemParams.from_values(**values)

    def as_dict(self):
        return dict(omega0=self.bath.omega0, zeta=self.bath.zeta,
                    g=self.bath.g, Omega=self.atom.Omega)


def dispersion(p: BathParams, k):
    """Mode frequency ``omega0 - 2 zeta cos k`` for ``k`` in ``(-pi, pi]``."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr <= -np.pi) or np.any(k_arr > np.pi):
        raise DomainError("wavenumber outside (-pi, pi]")
    out = p.omega0 - 2 * p.zeta * np.cos(k_arr)
    return float(out) if out.ndim == 0 else out


def _band_offset_sq(p: BathParams, omega):
    """``4 zeta^2 - (omega - omega0)^2``; raises at the edges."""
    omega = np.asarray(omega, dtype=float)
    d = 4 * p.zeta**2 - (omega - p.omega0) ** 2
    band = p.band
    if np.any((omega == band.lo) | (omega == band.hi)):
        raise EdgeSingularityError("spectral density diverges at the band edge")
    return omega, d


def density_of_states(p: BathParams, N, omega):
    """Continuum density of states ``N / (pi sqrt(4 zeta^2 - (omega-omega0)^2))``.

    Only defined strictly inside the band.
    """
    omega, d = _band_offset_sq(p, omega)
    if np.any(d <= 0):
        raise EdgeSingularityError("density of states requested outside the open band")
    out = N / (np.pi * np.sqrt(d))
    return float(out) if out.ndim == 0 else out


def dos_integral(p: BathParams, N, xi):
    """Number of states in ``[lo + xi, hi - xi]``.

    Exact antiderivative ``(N/pi) arcsin((omega - omega0) / 2 zeta)``; tends
    to ``N`` as ``xi -> 0``.
    """
    if not 0 <= xi < 2 * p.zeta:
        raise DomainError("cutoff must satisfy 0 <= xi < 2*zeta")
    s = (2 * p.zeta - xi) / (2 * p.zeta)
    return 2 * N / np.pi * math.asin(s)


def coupling_weight(p: SystemParams, v: StateVariant, omega):
    """Squared-coupling enhancement ``G_v / G_bare`` at ``omega``."""
    if StateVariant.parse(v) is BARE:
        return np.ones_like(np.asarray(omega, dtype=float))
    Om = p.atom.Omega
    return 4 * Om**2 / (np.asarray(omega, dtype=float) + Om) ** 2


def interacting_spectrum(p: SystemParams, v: StateVariant, omega):
    """Interacting spectrum ``G(omega)`` (bare) or ``G'(omega)`` (physical).

    Inside the band ``G = g^2 / (pi sqrt(4 zeta^2 - (omega - omega0)^2))``;
    the physical variant multiplies by ``4 Omega^2 / (omega + Omega)^2``.
    Outside the band the spectrum is exactly zero.

    Raises
    ------
    EdgeSingularityError
        If any ``omega`` sits exactly on a band edge.
    """
    b = p.bath
    omega, d = _band_offset_sq(b, omega)
    inside = d > 0
    out = np.zeros_like(omega)
    out[inside] = b.g**2 / (np.pi * np.sqrt(d[inside]))
    out = out * coupling_weight(p, v, omega)
    return float(out) if out.ndim == 0 else out


def spectrum_theta_density(p: SystemParams, v: StateVariant, theta):
    """``G_v(omega) d omega / d theta`` on the angle grid.

    With ``omega = omega0 + 2 zeta sin(theta)`` the bare spectrum becomes the
    constant ``g^2 / pi``.
    """
    omega = p.bath.omega0 + 2 * p.bath.zeta * np.sin(theta)
    return p.bath.g**2 / np.pi * coupling_weight(p, v, omega)


def shifted_frequency(p: SystemParams, v: StateVariant):
    """Level spacing renormalised by the counter-rotating terms.

    Bare state: ``Omega + g^2 / sqrt((omega0 + Omega)^2 - 4 zeta^2)``.
    Physical state:
    ``Omega - 2 Omega g^2 (omega0 + Omega) / ((omega0 + Omega)^2 - 4 zeta^2)^(3/2)``.
    """
    b, Om = p.bath, p.atom.Omega
    a = b.omega0 + Om
    disc = a * a - 4 * b.zeta**2
    if not disc > 0:
        raise DomainError("(omega0 + Omega)^2 must exceed 4 zeta^2")
    if StateVariant.parse(v) is BARE:
        return Om + b.g**2 / math.sqrt(disc)
    return Om - 2 * Om * b.g**2 * a / disc**1.5


def modified_coupling_factor(p: SystemParams, omega_k):
    """Ratio ``g'_k / g_k = 2 Omega / (omega_k + Omega)``."""
    Om = p.atom.Omega
    omega_k = np.asarray(omega_k, dtype=float)
    if np.any(omega_k + Om <= 0):
        raise DomainError("omega_k + Omega must be positive")
    out = 2 * Om / (omega_k + Om)
    return float(out) if out.ndim == 0 else out


def level_for_shift(p: SystemParams, target, v: StateVariant = StateVariant.BARE):
    """Bare spacing ``Omega`` whose shifted level equals ``target``.

    Both shifts are monotonic in ``Omega`` on the physical range, so a
    bracketing solve on ``(max(0, 2 zeta - omega0), target + 1)`` suffices.
    """
    b = p.bath
    lo = max(0.0, 2 * b.zeta - b.omega0) + 1e-12 * max(1.0, target)
    hi = 2 * target + 1.0

    def f(Om):
        return shifted_frequency(p.replace(Omega=Om), v) - target

    if f(lo) * f(hi) > 0:
        raise DomainError(f"no level spacing maps to shifted value {target}")
    return brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
