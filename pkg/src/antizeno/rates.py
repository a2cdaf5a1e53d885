"""Decay rates of a repeatedly measured emitter.

A projective measurement every ``tau`` broadens the atomic line into the
kernel ``F(omega) = tau/(2 pi) sinc^2((omega - center) tau / 2)``. The decay
rate is the overlap of that kernel with the interacting spectrum,
``R(tau) = 2 pi * integral F(omega) G(omega) d omega``, which stays finite
even when the level lies outside the band and the golden-rule rate is zero.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError
from .model import (
    StateVariant,
    SystemParams,
    interacting_spectrum,
    shifted_frequency,
    spectrum_theta_density,
)
from .quadrature import HALF_PI, uniform_rule

RATE_RTOL = 1e-9
_MAX_DOUBLINGS = 8


@dataclass(frozen=True)
class MeasurementSchedule:
    tau: float
    n: int = 1

    def __post_init__(self):
        if not self.tau > 0:
            raise DomainError("measurement interval must be positive")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("repetition count must be a positive integer")


@dataclass
class RateCurve:
    """Measured decay rate sampled on an increasing grid of intervals."""

    variant: StateVariant
    params: SystemParams
    taus: np.ndarray = field(default_factory=lambda: np.empty(0))
    rates: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def points(self):
        return list(zip(self.taus.tolist(), self.rates.tolist()))

    def __len__(self):
        return self.taus.size


def broadening_kernel(omega, center, tau):
    """Measurement-induced line shape ``tau/(2 pi) sinc^2((omega-center) tau/2)``."""
    if not tau > 0:
        raise DomainError("tau must be positive")
    arg = (np.asarray(omega, dtype=float) - center) * tau / 2
    # np.sinc is the normalised sinc, sin(pi x)/(pi x)
    out = tau / (2 * np.pi) * np.sinc(arg / np.pi) ** 2
    return float(out) if out.ndim == 0 else out


def _overlap(p, v, center, tau, panels):
    theta, w = uniform_rule(-HALF_PI, HALF_PI, panels)
    omega = p.bath.omega0 + 2 * p.bath.zeta * np.sin(theta)
    integrand = broadening_kernel(omega, center, tau) * spectrum_theta_density(p, v, theta)
    return 2 * np.pi * float(np.dot(w, integrand))


def measured_decay_rate(p: SystemParams, v: StateVariant, tau, rtol=RATE_RTOL):
    """Decay rate under projective measurements spaced by ``tau``.

    Parameters
    ----------
    p : SystemParams
    v : StateVariant
        Selects ``(Omega_1, G)`` for the bare state or ``(Omega', G')`` for
        the physical state.
    tau : float
        Measurement interval.
    rtol : float
        Relative agreement required between successive panel doublings.

    Returns
    -------
    float
        Rate in inverse time units, always non-negative.

    Raises
    ------
    NumericError
        If doubling stalls before reaching ``rtol``; the last estimate is
        attached as ``estimate``.
    """
    v = StateVariant.parse(v)
    if not tau > 0:
        raise DomainError("tau must be positive")
    if p.bath.g == 0:
        return 0.0
    center = shifted_frequency(p, v)
    # one panel per half-period of sin^2 across the band, plus a floor
    panels = 8 + math.ceil(2 * p.bath.zeta * tau / np.pi)
    prev = _overlap(p, v, center, tau, panels)
    for _ in range(_MAX_DOUBLINGS):
        panels *= 2
        cur = _overlap(p, v, center, tau, panels)
        if abs(cur - prev) <= rtol * abs(cur):
            return max(cur, 0.0)
        prev = cur
    raise NumericError(f"rate quadrature did not converge at tau={tau}", estimate=cur)


def golden_rule_rate(p: SystemParams, v: StateVariant):
    """Unmeasured (long-interval) rate ``2 pi G_v`` at the shifted level.

    Exactly zero when the shifted level lies outside the band; raises
    :class:`EdgeSingularityError` when it sits on an edge.
    """
    v = StateVariant.parse(v)
    return 2 * np.pi * interacting_spectrum(p, v, shifted_frequency(p, v))


def _threads():
    try:
        return max(1, int(os.environ.get("ANTIZENO_THREADS", "1")))
    except ValueError:
        return 1


def rate_scan(p: SystemParams, v: StateVariant, taus, workers=None) -> RateCurve:
    """Evaluate :func:`measured_decay_rate` on each interval in ``taus``.

    Points may be computed concurrently (``workers`` threads, default from
    ``ANTIZENO_THREADS``) but are always returned in input order.
    """
    v = StateVariant.parse(v)
    taus = np.asarray(taus, dtype=float).ravel()
    if taus.size and (np.any(taus <= 0) or np.any(np.diff(taus) <= 0)):
        raise DomainError("taus must be positive and strictly increasing")

    def one(tau):
        try:
            return measured_decay_rate(p, v, tau)
        except NumericError as exc:
            raise NumericError(f"tau={tau}: {exc}", estimate=exc.estimate) from exc

    workers = workers or _threads()
    if workers > 1 and taus.size > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rates = list(pool.map(one, taus))
    else:
        rates = [one(t) for t in taus]
    return RateCurve(v, p, taus, np.array(rates, dtype=float))


def perturbative_survival(rate, schedule: MeasurementSchedule):
    """Second-order estimate ``exp(-R n tau)`` of the survival after ``n`` measurements."""
    return math.exp(-rate * schedule.n * schedule.tau)


