"""Exact single-excitation dynamics without the Wigner-Weisskopf approximation.

The atomic amplitude is the inverse Laplace transform of the resolvent and
splits into two bound-state poles and a branch cut over the band::

    alpha(t) = A1 exp(-i E1 t) + A2 exp(-i E2 t)
               + integral_{-2 zeta}^{2 zeta} C(x) exp(i (Omega/2 - omega0 + x) t) dx

``E1`` lies above the shifted band and ``E2`` below it. Because the residues
and ``C`` are finite for every level spacing, the survival probability and the
instantaneous decay rate stay finite even with the level exactly on a band
edge, where the golden-rule rate diverges.

Pole energies are parameterised by ``y = E + Omega/2 - omega0 = +-2 zeta cosh(eta)``
so that roots hugging the band edge keep full relative precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import DegeneracyError, DomainError, NumericError
from .model import BathParams
from .quadrature import HALF_PI, composite_rule, graded_edges

POLE_TOL = 1e-12
BRANCH_ATOL = 1e-10
MIN_SURVIVAL = 1e-6
_MAX_DOUBLINGS = 7
_CHUNK = 256


@dataclass(frozen=True)
class ExactParams:
    """Parameters of the exactly solved model.

    ``Omega_eff`` is whichever level spacing the scenario calls for: the bare
    ``Omega`` or one of its counter-rotating-shifted values.
    """

    omega0: float
    zeta: float
    g: float
    Omega_eff: float

    def __post_init__(self):
        BathParams(self.omega0, self.zeta, self.g)
        if not self.Omega_eff > 0:
            raise DomainError("Omega_eff must be positive")

    @property
    def detuning(self):
        """Offset of the atomic line from the band centre, ``Omega - omega0``."""
        return self.Omega_eff - self.omega0


@dataclass(frozen=True)
class PoleSolution:
    E1: float
    E2: float
    A1: float = float("nan")
    A2: float = float("nan")
    eta1: float = float("nan")
    eta2: float = float("nan")


@dataclass(frozen=True)
class TimeSeries:
    t: np.ndarray
    values: np.ndarray
    label: str

    def __len__(self):
        return self.t.size


def _pole_residual(p: ExactParams, eta, branch):
    """Residual of the bound-state equation at ``y = branch * 2 zeta cosh(eta)``.

    ``branch=+1`` is ``E - Omega/2 - g^2/sqrt(y^2 - 4 zeta^2)`` above the band,
    ``branch=-1`` is ``E - Omega/2 + g^2/sqrt(y^2 - 4 zeta^2)`` below it.
    """
    z2 = 2 * p.zeta
    # E - Omega/2 = omega0 - Omega + y
    level = (p.omega0 - p.Omega_eff) + branch * z2 * math.cosh(eta)
    return level - branch * p.g**2 / (z2 * math.sinh(eta))


def _bisect_eta(p: ExactParams, branch, tol):
    lo = 1e-300
    hi = 1.0
    # residual is increasing in eta for branch +1 and decreasing for -1
    sgn = branch
    while sgn * _pole_residual(p, hi, branch) <= 0:
        hi *= 2
        if hi > 700:
            raise NumericError("pole bracket expansion failed")
    for _ in range(2000):
        if hi > 4 * lo:
            mid = math.sqrt(lo * hi)
        else:
            mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f = _pole_residual(p, mid, branch)
        if abs(f) < tol:
            return mid
        if sgn * f < 0:
            lo = mid
        else:
            hi = mid
    f_lo, f_hi = _pole_residual(p, lo, branch), _pole_residual(p, hi, branch)
    best = lo if abs(f_lo) < abs(f_hi) else hi
    if min(abs(f_lo), abs(f_hi)) < tol:
        return best
    raise NumericError("pole bisection stalled above tolerance", estimate=best)


def _energy(p: ExactParams, eta, branch):
    return p.omega0 - 0.5 * p.Omega_eff + branch * 2 * p.zeta * math.cosh(eta)


def pole_residuals(p: ExactParams, poles: PoleSolution):
    """Residuals of the two bound-state equations at a computed solution.

    Evaluated in the edge-distance variable when available, since pole
    energies within ~1e-16 of a band edge are not representable as floats.
    """
    if not (math.isnan(poles.eta1) or math.isnan(poles.eta2)):
        return _pole_residual(p, poles.eta1, 1), _pole_residual(p, poles.eta2, -1)
    out = []
    for E, branch in ((poles.E1, 1), (poles.E2, -1)):
        y = E + 0.5 * p.Omega_eff - p.omega0
        out.append(E - 0.5 * p.Omega_eff - branch * p.g**2 / math.sqrt(y * y - 4 * p.zeta**2))
    return tuple(out)


def find_poles(p: ExactParams, tol=POLE_TOL) -> PoleSolution:
    """Bound-state energies above and below the band.

    Each side has exactly one root because the residual diverges at the band
    edge and grows linearly far away. The roots are bracketed and bisected
    until the residual drops below ``tol``.
    """
    if not p.g > 0:
        raise DomainError("pole search requires g > 0")
    eta1 = _bisect_eta(p, +1, tol)
    eta2 = _bisect_eta(p, -1, tol)
    return PoleSolution(_energy(p, eta1, 1), _energy(p, eta2, -1), eta1=eta1, eta2=eta2)


def _residue_from_eta(p: ExactParams, eta, branch):
    y = branch * 2 * p.zeta * math.cosh(eta)
    s2 = (2 * p.zeta * math.sinh(eta)) ** 2  # y^2 - 4 zeta^2 without cancellation
    level = (p.omega0 - p.Omega_eff) + y
    return s2 / (s2 + level * y)


def residue_coefficients(p: ExactParams, E1, E2):
    """Pole weights ``A_j = D / (D + (E_j - Omega/2)(E_j + Omega/2 - omega0))``
    with ``D = (E_j + Omega/2 - omega0)^2 - 4 zeta^2``."""
    out = []
    for E in (E1, E2):
        y = E + 0.5 * p.Omega_eff - p.omega0
        d = y * y - 4 * p.zeta**2
        if not d > 0:
            raise DomainError("pole energy lies inside the band")
        out.append(d / (d + (E - 0.5 * p.Omega_eff) * y))
    return tuple(out)


def branch_cut_weight(p: ExactParams, x):
    """Continuum weight
    ``C(x) = g^2 sqrt(4 zeta^2 - x^2) / (pi ((4 zeta^2 - x^2)(Omega - omega0 + x)^2 + g^4))``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 2 * p.zeta):
        raise DomainError("branch-cut offset outside [-2 zeta, 2 zeta]")
    s2 = np.clip(4 * p.zeta**2 - x * x, 0.0, None)
    num = p.g**2 * np.sqrt(s2)
    den = s2 * (p.detuning + x) ** 2 + p.g**4
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(num == 0, 0.0, num / (np.pi * den))
    return float(out) if out.ndim == 0 else out


def _theta_weight(p: ExactParams, theta):
    """``C(x) dx/dtheta`` with ``x = 2 zeta sin(theta)``."""
    c = 2 * p.zeta * np.cos(theta)
    x = 2 * p.zeta * np.sin(theta)
    c2 = c * c
    return p.g**2 * c2 / (np.pi * (c2 * (p.detuning + x) ** 2 + p.g**4))


@dataclass(frozen=True)
class BranchCutWeight:
    """Quadrature table for the continuum part of the amplitude.

    ``weights`` already include ``C(x)`` and the Jacobian, so any continuum
    integral reduces to ``sum(weights * f(x))``.
    """

    x: np.ndarray
    weights: np.ndarray
    t_max: float

    @property
    def total(self):
        return float(np.sum(self.weights))


def _branch_table(p: ExactParams, uniform_panels):
    center, width = 0.0, 0.0
    if p.g > 0 and abs(p.detuning) < 2 * p.zeta:
        # Lorentzian peak at x = omega0 - Omega, half-width g^2 / (4 zeta^2 - x^2) in theta
        xr = -p.detuning
        center = math.asin(xr / (2 * p.zeta))
        width = min(p.g**2 / (4 * p.zeta**2 - xr * xr), 0.25)
    edges = graded_edges(-HALF_PI, HALF_PI, center, width, uniform_panels)
    theta, w = composite_rule(edges)
    return 2 * p.zeta * np.sin(theta), w * _theta_weight(p, theta)


def _continuum_sum(x, weights, phase0, ts, moment=False):
    """``sum_j w_j f(x_j) exp(i (phase0 + x_j) t)`` for each t, chunked."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    freq = phase0 + x
    wf = weights * freq if moment else weights
    out = np.empty(ts.size, dtype=complex)
    for i in range(0, ts.size, _CHUNK):
        tt = ts[i:i + _CHUNK]
        out[i:i + _CHUNK] = np.exp(1j * np.outer(tt, freq)) @ wf
    return out


@lru_cache(maxsize=64)
def build_branch_cut(p: ExactParams, t_max, atol=BRANCH_ATOL) -> BranchCutWeight:
    """Branch-cut table accurate to ``atol`` for every ``0 <= t <= t_max``.

    Panel count starts at one per half-period of the fastest continuum
    oscillation at ``t_max`` and doubles until the normalisation and the
    oscillatory integral at several probe times stop changing.
    """
    t_max = float(t_max)
    panels = 8 + math.ceil(4 * p.zeta * t_max / np.pi)
    phase0 = 0.5 * p.Omega_eff - p.omega0
    probes = np.linspace(0.0, t_max, 5)

    def evaluate(n):
        x, w = _branch_table(p, n)
        return x, w, _continuum_sum(x, w, phase0, probes)

    x, w, prev = evaluate(panels)
    for _ in range(_MAX_DOUBLINGS):
        panels *= 2
        x, w, cur = evaluate(panels)
        if np.max(np.abs(cur - prev)) <= atol:
            x.flags.writeable = False
            w.flags.writeable = False
            return BranchCutWeight(x, w, t_max)
        prev = cur
    raise NumericError("branch-cut quadrature did not converge",
                       estimate=float(np.max(np.abs(cur - prev))))


class ExactSolution:
    """Poles, residues and continuum weight for one parameter set.

    Construction performs the pole search once; evaluation at any set of
    times is pure, so one instance may be shared between threads.

    Examples
    --------
    >>> sol = ExactSolution(ExactParams(1.0, 0.1, 0.1, 1.2))
    >>> round(float(sol.survival([0.0]).values[0]), 8)
    1.0
    """

    def __init__(self, params: ExactParams):
        self.params = params
        p = params
        if p.g > 0:
            raw = find_poles(p)
            A1 = _residue_from_eta(p, raw.eta1, 1)
            A2 = _residue_from_eta(p, raw.eta2, -1)
            self.poles = PoleSolution(raw.E1, raw.E2, A1, A2, raw.eta1, raw.eta2)
        else:
            # decoupled atom: a single unit pole at the bare level
            self.poles = PoleSolution(0.5 * p.Omega_eff, 0.5 * p.Omega_eff, 1.0, 0.0)
        self._phase0 = 0.5 * p.Omega_eff - p.omega0

    @property
    def E(self):
        return np.array([self.poles.E1, self.poles.E2])

    @property
    def A(self):
        return np.array([self.poles.A1, self.poles.A2])

    def branch_cut(self, t_max=0.0) -> BranchCutWeight:
        # round the horizon up so nearby requests share a cached table
        horizon = 2.0 ** math.ceil(math.log2(max(t_max, 1.0)))
        return build_branch_cut(self.params, horizon)

    @cached_property
    def continuum_weight(self):
        """``integral C(x) dx``; equals ``1 - A1 - A2``."""
        if self.params.g == 0:
            return 0.0
        return self.branch_cut().total

    def _tables(self, ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if np.any(ts < 0):
            raise DomainError("times must be non-negative")
        return ts, self.branch_cut(float(ts.max()) if ts.size else 0.0)

    def I1(self, ts):
        """Continuum amplitude ``integral C(x) exp(i (Omega/2 - omega0 + x) t) dx``."""
        ts, bc = self._tables(ts)
        if self.params.g == 0:
            return np.zeros(ts.size, dtype=complex)
        return _continuum_sum(bc.x, bc.weights, self._phase0, ts)

    def I2(self, ts):
        """Time derivative of :meth:`I1`."""
        ts, bc = self._tables(ts)
        if self.params.g == 0:
            return np.zeros(ts.size, dtype=complex)
        return 1j * _continuum_sum(bc.x, bc.weights, self._phase0, ts, moment=True)

    def _pole_terms(self, ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return self.A[None, :] * np.exp(-1j * np.outer(ts, self.E))

    def amplitude(self, ts):
        """Complex survival amplitude ``alpha(t)``."""
        return self._pole_terms(ts).sum(axis=1) + self.I1(ts)

    def amplitude_derivative(self, ts):
        return (-1j * self._pole_terms(ts) * self.E).sum(axis=1) + self.I2(ts)

    def survival(self, ts) -> TimeSeries:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return TimeSeries(ts, np.abs(self.amplitude(ts)) ** 2, "survival")

    def survival_derivative(self, ts):
        """``d|alpha|^2/dt = 2 Re(conj(alpha) dalpha/dt)``."""
        a = self.amplitude(ts)
        return 2 * np.real(np.conj(a) * self.amplitude_derivative(ts))

    def survival_derivative_expanded(self, ts):
        """Same derivative assembled term by term from pole and continuum pieces.

        Sum of ``2 Re(I1 conj(I2))``, the pole-pole beat
        ``-2 A1 A2 (E1 - E2) sin((E1 - E2) t)``, and the two pole-continuum
        cross terms.
        """
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        i1, i2 = self.I1(ts), self.I2(ts)
        A1, A2 = self.A
        E1, E2 = self.E
        p = -1j * self.E  # Laplace-variable poles
        e = np.exp(np.outer(ts, p))
        pole = A1 * e[:, 0] + A2 * e[:, 1]
        dpole = A1 * p[0] * e[:, 0] + A2 * p[1] * e[:, 1]
        return (2 * np.real(i1 * np.conj(i2))
                - 2 * A1 * A2 * (E1 - E2) * np.sin((E1 - E2) * ts)
                + 2 * np.real(dpole * np.conj(i1))
                + 2 * np.real(pole * np.conj(i2)))

    def rate(self, ts, min_survival=MIN_SURVIVAL) -> TimeSeries:
        """Instantaneous decay rate ``-(d|alpha|^2/dt) / |alpha|^2``.

        Oscillates through zero once the bound-state beat dominates; reported
        without smoothing.
        """
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        a = self.amplitude(ts)
        surv = np.abs(a) ** 2
        if np.any(surv < min_survival):
            bad = ts[np.argmax(surv < min_survival)]
            raise DegeneracyError(f"survival probability below {min_survival} at t={bad}")
        dsurv = 2 * np.real(np.conj(a) * self.amplitude_derivative(ts))
        return TimeSeries(ts, -dsurv / surv, "rate")


def survival_amplitude(p: ExactParams, t):
    out = ExactSolution(p).amplitude(t)
    return complex(out[0]) if np.ndim(t) == 0 else out


def survival_probability(p: ExactParams, ts) -> TimeSeries:
    _check_grid(ts)
    return ExactSolution(p).survival(ts)


def instantaneous_rate(p: ExactParams, ts) -> TimeSeries:
    _check_grid(ts)
    return ExactSolution(p).rate(ts)


def _check_grid(ts):
    ts = np.asarray(ts, dtype=float)
    if ts.ndim != 1 or np.any(ts < 0) or np.any(np.diff(ts) <= 0):
        raise DomainError("time grid must be one-dimensional, non-negative and increasing")


def wigner_weisskopf_amplitude(p: ExactParams, t):
    """Far-detuned pure-phase amplitude
    ``exp(-i (Omega/2 + g^2 / sqrt((omega0 - Omega)^2 - 4 zeta^2)) t)``."""
    d = (p.omega0 - p.Omega_eff) ** 2 - 4 * p.zeta**2
    if not d > 0:
        raise DomainError("Wigner-Weisskopf phase needs (omega0 - Omega)^2 > 4 zeta^2")
    out = np.exp(-1j * (0.5 * p.Omega_eff + p.g**2 / math.sqrt(d)) * np.asarray(t, dtype=float))
    return complex(out) if np.ndim(out) == 0 else out
