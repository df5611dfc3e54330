import math

import numpy as np
import pytest
from scipy.optimize import brentq

from cascade_thermo.analysis import (
    InsufficientTailError,
    integrate_heat,
    sweep,
    tau_p,
    verify_tdd_flux_relation,
)
from cascade_thermo.gaussian import GaussianParams, closed_flux_trajectory
from cascade_thermo.qubits import QubitParams


def thermal_traj(n_s=1.0, horizon=60.0, dt=0.005):
    grid = np.arange(0.0, horizon + dt / 2, dt)
    return closed_flux_trajectory(GaussianParams(1.0, 0.0, n_s), grid)


# ---------------------------------------------------------------------------
# heat integrals
# ---------------------------------------------------------------------------

def test_integrated_heat_thermal():
    led = integrate_heat(thermal_traj(dt=0.001))
    assert abs(led.q_infinity - 2.0) < 1e-6
    assert abs(led.int_j1 - 1.0) < 1e-6
    # Q(t) = 2 - e^-t (2 + t^2) for a unit-occupation start
    for i in (1000, 5000, 20000):
        t = led.t[i]
        assert abs(led.q[i] - (2.0 - math.exp(-t) * (2.0 + t * t))) < 1e-6
    assert led.richardson_error < 1e-5
    assert led.which == "cascade"


def test_total_heat_ignores_initial_correlations():
    grid = np.arange(0.0, 60.0 + 0.0005, 0.001)
    p = GaussianParams(1.0, 0.0, 1.0)
    qs = [
        integrate_heat(closed_flux_trajectory(p, grid, s=s)).q_infinity
        for s in (-1.5, 0.0, 1.4)
    ]
    assert max(qs) - min(qs) < 1e-6


def test_insufficient_tail_raises():
    with pytest.raises(InsufficientTailError):
        integrate_heat(thermal_traj(horizon=5.0))


def test_independent_column():
    led = integrate_heat(thermal_traj(dt=0.001), which="independent")
    assert abs(led.q_infinity - 2.0) < 1e-6
    with pytest.raises(ValueError):
        integrate_heat(thermal_traj(), which="sideways")


# ---------------------------------------------------------------------------
# percentile times
# ---------------------------------------------------------------------------

def test_tau_p_against_analytic_inversion():
    traj = thermal_traj()
    for p in (25.0, 50.0, 86.0, 95.0):
        rep = tau_p(traj, p)
        ref = brentq(lambda t: 1.0 - math.exp(-t) * (2.0 + t * t) / 2.0 - p / 100.0, 1e-6, 50.0)
        assert abs(rep.tau - ref) < 2e-5
        assert rep.residual < 1e-9
        assert rep.iterations <= 200


def test_tau_p_bounds():
    traj = thermal_traj()
    with pytest.raises(ValueError):
        tau_p(traj, 0.0)
    with pytest.raises(ValueError):
        tau_p(traj, 100.0)
    with pytest.raises(ValueError):
        tau_p(traj, -3.0)


def test_tau_p_monotone_in_p():
    traj = thermal_traj()
    taus = [tau_p(traj, p).tau for p in (25.0, 50.0, 75.0, 90.0)]
    assert all(a < b for a, b in zip(taus, taus[1:]))


def test_tau_p_invariant_under_occupation_rescale():
    """tau_p depends on the normalized release curve, not on its scale."""
    base = [tau_p(thermal_traj(n_s=1.0), p).tau for p in (50.0, 86.0)]
    for n_s in (0.5, 2.0):
        other = [tau_p(thermal_traj(n_s=n_s), p).tau for p in (50.0, 86.0)]
        assert other == base


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def test_gaussian_sweep_decreases_with_correlation_sum():
    res = sweep("gaussian", np.array([-1.0, 0.0, 1.0]), p_list=(90.0,))
    assert res.family == "gaussian"
    assert not res.warnings
    taus = [r[2] for r in res.rows]
    assert taus[0] > taus[1] > taus[2]


def test_sweep_skips_invalid_parameters():
    res = sweep("gaussian", np.array([0.0, 5.0]), p_list=(50.0,))
    assert len(res.warnings) == 1
    assert "5.0" in res.warnings[0]
    assert len(res.rows) == 1


def test_qubit_sweep_smoke():
    res = sweep("qubit", np.array([0.0, 0.5]), p_list=(50.0,), xi_s=0.25)
    assert len(res.rows) == 2
    assert all(r[2] > 0 for r in res.rows)
    with pytest.raises(ValueError):
        sweep("spin-chain", np.array([0.0]))


def test_sweep_csv(tmp_path):
    res = sweep("gaussian", np.array([0.0, 0.5]), p_list=(50.0, 90.0))
    out = tmp_path / "sweep.csv"
    res.write_csv(str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "param,p,tau_p"
    assert len(lines) == 1 + 4


# ---------------------------------------------------------------------------
# discord-flux link
# ---------------------------------------------------------------------------

def test_tdd_flux_ratio_is_the_coupling():
    grid = np.linspace(0.0, 3.0, 7)
    params = QubitParams(1.0, math.tanh(0.5), 0.0)
    rep = verify_tdd_flux_relation(params, 0.2, 0.8, grid, restarts=2, maxfev=800)
    assert rep.n_compared >= 4
    assert rep.relative_spread < 1e-3
    assert abs(rep.fitted_constant - rep.expected_constant) < 1e-3
    assert rep.expected_constant == 4.0 * params.xi


def test_tdd_flux_report_csv(tmp_path):
    grid = np.linspace(0.0, 2.0, 5)
    params = QubitParams(1.0, 0.75, 0.0)
    rep = verify_tdd_flux_relation(params, 0.2, 0.8, grid, restarts=2, maxfev=600)
    out = tmp_path / "ratio.csv"
    rep.write_csv(str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "t,abs_j12,tdd,ratio"
    assert len(lines) == 1 + len(grid)


def test_tdd_flux_relation_deterministic():
    grid = np.linspace(0.0, 2.0, 5)
    params = QubitParams(1.0, 0.75, 0.0)
    a = verify_tdd_flux_relation(params, 0.2, 0.8, grid, restarts=2, maxfev=600, seed=9)
    b = verify_tdd_flux_relation(params, 0.2, 0.8, grid, restarts=2, maxfev=600, seed=9)
    assert a.fitted_constant == b.fitted_constant
