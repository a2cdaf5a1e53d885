import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from antizeno import (
    DegeneracyError,
    DomainError,
    ExactParams,
    ExactSolution,
    branch_cut_weight,
    find_poles,
    instantaneous_rate,
    pole_residuals,
    residue_coefficients,
    survival_amplitude,
    survival_probability,
    wigner_weisskopf_amplitude,
)

from conftest import BASE, EDGE_OMEGAS


def ep(Omega, **kw):
    base = dict(BASE)
    base.update(kw)
    return ExactParams(Omega_eff=Omega, **base)


def bisect_plain(f, a, b, n=200):
    fa = f(a)
    for _ in range(n):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0:
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def f_upper(p, E):
    y = E + p.Omega_eff / 2 - p.omega0
    return E - p.Omega_eff / 2 - p.g**2 / math.sqrt(y * y - 4 * p.zeta**2)


def f_lower(p, E):
    y = E + p.Omega_eff / 2 - p.omega0
    return E - p.Omega_eff / 2 + p.g**2 / math.sqrt(y * y - 4 * p.zeta**2)


def test_poles_above_band_against_plain_bisection():
    p = ep(2.0)
    sol = find_poles(p)
    # energy-space brackets (0.2 + 1e-12, 4) and (-4, -0.2 - 1e-12)
    E1 = bisect_plain(lambda E: f_upper(p, E), 0.2 + 1e-12, 4.0)
    E2 = bisect_plain(lambda E: f_lower(p, E), -4.0, -0.2 - 1e-12)
    assert sol.E1 == pytest.approx(E1, abs=1e-12)
    assert sol.E2 == pytest.approx(E2, abs=1e-12)
    assert sol.E1 == pytest.approx(1.0101, abs=5e-5)
    assert sol.E2 == pytest.approx(-0.2002, abs=5e-5)


def test_pole_side_conditions():
    for Om in (0.5, 1.0, 1.198, 1.2, 2.0, 10.0):
        p = ep(Om)
        s = find_poles(p)
        assert s.E1 > p.omega0 - Om / 2 + 2 * p.zeta
        assert s.E2 < p.omega0 - Om / 2 - 2 * p.zeta
        assert max(map(abs, pole_residuals(p, s))) < 1e-12


def test_decoupling_limit():
    s = find_poles(ep(2.0, g=1e-6))
    assert s.E1 == pytest.approx(1.0, abs=1e-6)
    sol = ExactSolution(ep(2.0, g=1e-6))
    assert sol.poles.A1 == pytest.approx(1.0, abs=1e-10)
    assert sol.poles.A2 == pytest.approx(0.0, abs=1e-10)


def test_find_poles_requires_coupling():
    with pytest.raises(DomainError):
        find_poles(ep(2.0, g=0.0))


def test_residues_above_band():
    p = ep(2.0)
    s = find_poles(p)
    A1, A2 = residue_coefficients(p, s.E1, s.E2)
    # independent oracle: residue = 1 / f'(E), derivative by central differences
    h = 1e-7
    d1 = (f_upper(p, s.E1 + h) - f_upper(p, s.E1 - h)) / (2 * h)
    d2 = (f_lower(p, s.E2 - 1e-9 + 1e-10) - f_lower(p, s.E2 - 1e-9 - 1e-10)) / 2e-10
    assert A1 == pytest.approx(1 / d1, rel=1e-6)
    assert A2 == pytest.approx(1 / d2, rel=1e-3)
    assert A1 == pytest.approx(0.9897, abs=5e-5)
    assert A2 == pytest.approx(2.889e-4, rel=1e-3)
    sol = ExactSolution(p)
    assert 1 - A1 - A2 == pytest.approx(sol.continuum_weight, abs=1e-10)


def test_residue_rejects_in_band_energy():
    with pytest.raises(DomainError):
        residue_coefficients(ep(2.0), 0.0, -0.5)


@pytest.mark.parametrize("Om", [0.5, 1.0, 1.2, 2.0])
@pytest.mark.parametrize("g", [0.01, 0.1])
@pytest.mark.parametrize("zeta", [0.05, 0.1])
def test_normalisation_sweep(Om, g, zeta):
    sol = ExactSolution(ep(Om, g=g, zeta=zeta))
    assert sol.poles.A1 + sol.poles.A2 + sol.continuum_weight == pytest.approx(1.0, abs=1e-8)
    assert 0 < sol.poles.A1 <= 1 and 0 < sol.poles.A2 <= 1


def test_continuum_weight_against_quadpack():
    for Om, g in ((1.0, 0.1), (1.198, 0.1), (2.0, 0.1)):
        p = ep(Om, g=g)
        val, _ = integrate.quad(lambda x: branch_cut_weight(p, x), -0.2, 0.2,
                                points=[p.omega0 - Om] if abs(p.omega0 - Om) < 0.2 else None,
                                epsabs=1e-14, epsrel=1e-12, limit=500)
        assert ExactSolution(p).continuum_weight == pytest.approx(val, abs=1e-11)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.3, 4.0), st.floats(0.01, 0.3), st.floats(0.02, 0.2))
def test_normalisation_property(Om, g, zeta):
    sol = ExactSolution(ExactParams(1.0, zeta, g, Om))
    assert sol.poles.A1 + sol.poles.A2 + sol.continuum_weight == pytest.approx(1.0, abs=1e-8)


def test_branch_cut_values():
    p = ep(1.2)
    assert branch_cut_weight(p, 0.2) == 0.0
    assert branch_cut_weight(p, -0.2) == 0.0
    assert branch_cut_weight(p, 0.0) == pytest.approx(0.002 / (np.pi * 0.0017), rel=1e-14)
    assert branch_cut_weight(p, 0.0) == pytest.approx(0.3745, abs=1e-4)
    # the g^4 term keeps C finite where the atomic line crosses the band
    p_in = ep(1.05)
    assert branch_cut_weight(p_in, -0.05) == pytest.approx(
        0.01 * math.sqrt(0.04 - 0.0025) / (np.pi * 1e-4), rel=1e-14)
    with pytest.raises(DomainError):
        branch_cut_weight(p, 0.21)


def test_branch_cut_nonnegative():
    x = np.linspace(-0.2, 0.2, 401)
    for Om in (0.9, 1.0, 1.2, 1.4):
        assert np.all(branch_cut_weight(ep(Om), x) >= 0)


@pytest.mark.parametrize("Om", [0.5, 1.0, 1.2, 2.0])
def test_amplitude_starts_at_one(Om):
    assert survival_amplitude(ep(Om), 0.0) == pytest.approx(1.0 + 0j, abs=1e-8)


def test_decoupled_atom_is_pure_phase():
    sol = ExactSolution(ep(1.0, g=0.0))
    t = np.linspace(0, 50, 11)
    np.testing.assert_allclose(np.abs(sol.amplitude(t)), 1.0, atol=1e-15)
    np.testing.assert_allclose(sol.rate(t).values, 0.0, atol=1e-15)


def test_far_detuned_regime():
    p = ep(10.0)
    sol = ExactSolution(p)
    t = np.linspace(0, 100, 1001)
    assert np.all(sol.survival(t).values >= 0.999)
    a = sol.amplitude([1.0])[0]
    ww = wigner_weisskopf_amplitude(p, 1.0)
    assert abs(cmath.phase(a / ww)) < 1e-3


def test_wigner_weisskopf_values():
    p = ep(10.0)
    assert wigner_weisskopf_amplitude(p, 0.0) == 1.0
    phase = -(5 + 0.01 / math.sqrt(81 - 0.04))
    assert wigner_weisskopf_amplitude(p, 1.0) == pytest.approx(cmath.exp(1j * phase), abs=1e-12)
    assert phase == pytest.approx(-5.001111, abs=1e-6)
    np.testing.assert_allclose(np.abs(wigner_weisskopf_amplitude(p, np.linspace(0, 1e3, 7))), 1.0)
    with pytest.raises(DomainError):
        wigner_weisskopf_amplitude(ep(1.1), 1.0)


def test_unitarity_bound(edge_solutions, edge_grid):
    for sol in edge_solutions.values():
        assert np.all(sol.survival(edge_grid).values <= 1 + 1e-9)


def test_survival_settles(edge_solutions):
    t = np.linspace(150, 200, 501)
    for sol in edge_solutions.values():
        A1, A2 = sol.A
        mean = sol.survival(t).values.mean()
        assert abs(mean - (A1**2 + A2**2)) <= 2 * A1 * A2


def test_derivative_matches_finite_differences(edge_solutions):
    sol = edge_solutions[1.203]
    t = np.linspace(2.0, 198.0, 50)
    h = 1e-4
    analytic = sol.survival_derivative(t)
    fd = (sol.survival(t + h).values - sol.survival(t - h).values) / (2 * h)
    np.testing.assert_allclose(analytic, fd, rtol=1e-5)


def test_expanded_derivative_grouping(edge_solutions):
    t = np.linspace(0, 200, 401)
    for sol in edge_solutions.values():
        np.testing.assert_allclose(sol.survival_derivative_expanded(t),
                                   sol.survival_derivative(t), atol=1e-14)


def test_I2_is_time_derivative_of_I1(edge_solutions):
    sol = edge_solutions[1.2]
    t = np.array([3.0, 40.0, 170.0])
    h = 1e-5
    fd = (sol.I1(t + h) - sol.I1(t - h)) / (2 * h)
    np.testing.assert_allclose(sol.I2(t), fd, atol=1e-9)


def test_rate_finite_at_band_edge(edge_solutions, edge_grid):
    for sol in edge_solutions.values():
        r = sol.rate(edge_grid).values
        assert np.all(np.isfinite(r))
        assert np.abs(r).max() < 1.0
        assert r.min() < 0 < r.max()


def test_rate_functional_api():
    series = instantaneous_rate(ep(1.2), np.linspace(0, 10, 11))
    assert series.label == "rate" and len(series) == 11
    surv = survival_probability(ep(1.2), np.array([0.0, 1.0]))
    assert surv.values[0] == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(DomainError):
        survival_probability(ep(1.2), np.array([1.0, 0.5]))


def test_rate_degeneracy_error():
    # strong coupling at band centre drives the survival through near-zero values
    sol = ExactSolution(ep(1.0, g=0.3, zeta=0.4))
    t = np.linspace(0, 30, 3001)
    if sol.survival(t).values.min() < 1e-6:
        with pytest.raises(DegeneracyError):
            sol.rate(t)
    with pytest.raises(DegeneracyError):
        sol.rate(t, min_survival=2.0)


def test_branch_table_cached_and_readonly(edge_solutions):
    sol = edge_solutions[1.198]
    a = sol.branch_cut(150.0)
    b = sol.branch_cut(200.0)
    assert a is b
    with pytest.raises(ValueError):
        a.weights[0] = 1.0


def test_negative_time_rejected():
    with pytest.raises(DomainError):
        ExactSolution(ep(1.2)).amplitude([-1.0])
