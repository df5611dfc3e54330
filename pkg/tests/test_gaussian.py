import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from cascade_thermo.gaussian import (
    CovMatrix,
    GaussianParams,
    check_physical,
    closed_flux_trajectory,
    correlated_cov,
    correlated_fluxes_closed,
    drift_and_diffusion,
    evolve_cov,
    fluxes_from_cov,
    mean_energy,
    simulate_fluxes,
    stationary_points,
    symplectic_eigenvalues,
    thermal_cov,
    thermal_fluxes_closed,
)

OMEGA = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


# ---------------------------------------------------------------------------
# parameters and state constructors
# ---------------------------------------------------------------------------

def test_params_validation():
    GaussianParams(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        GaussianParams(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        GaussianParams(1.0, -0.1, 1.0)
    with pytest.raises(ValueError):
        GaussianParams(1.0, 0.0, -1.0)


def test_thermal_cov():
    c = thermal_cov(1.0).c
    assert np.array_equal(c, 1.5 * np.eye(4))
    assert np.array_equal(thermal_cov(0.0).c, 0.5 * np.eye(4))


def test_correlated_cov_accepts_and_rejects():
    c = correlated_cov(1.0, 1.0, 1.0).c
    assert c[0, 2] == c[2, 0] == 1.0
    assert c[1, 3] == c[3, 1] == 1.0
    assert c[0, 0] == 1.5
    with pytest.raises(ValueError):
        correlated_cov(1.0, 1.2, 1.2)
    with pytest.raises(ValueError):
        correlated_cov(1.0, 1.49, -1.49)
    # a vacuum start admits no correlations at all
    correlated_cov(0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        correlated_cov(0.0, 0.1, 0.0)


def test_check_physical():
    rep = check_physical(thermal_cov(1.0))
    assert rep.physical
    assert abs(rep.nu_minus - 1.5) < 1e-12
    assert abs(rep.nu_plus - 1.5) < 1e-12
    # vacuum sits exactly on the uncertainty boundary
    assert check_physical(thermal_cov(0.0)).physical
    bad = check_physical(np.diag([0.4, 0.4, 0.4, 0.4]))
    assert not bad.physical
    assert bad.reason


def test_symplectic_eigenvalues_oracle():
    """Williamson spectrum agrees with |eig(i Omega C)| on random valid states."""
    rng = np.random.default_rng(42)
    for _ in range(20):
        l = 0.35 * rng.standard_normal((4, 4))
        c = 0.5 * np.eye(4) + l @ l.T
        got = symplectic_eigenvalues(c)
        ref = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA @ c)))
        assert abs(got[0] - ref[0]) < 1e-10
        assert abs(got[1] - ref[2]) < 1e-10


# ---------------------------------------------------------------------------
# dynamics
# ---------------------------------------------------------------------------

def test_drift_structure():
    a, m = drift_and_diffusion(GaussianParams(1.0, 0.0, 1.0))
    assert np.allclose(np.diag(a), -0.5)
    assert a[2, 0] == -1.0 and a[3, 1] == -1.0
    mask = np.ones((4, 4), dtype=bool)
    mask[np.diag_indices(4)] = False
    mask[2, 0] = mask[3, 1] = False
    assert np.all(a[mask] == 0.0)
    assert np.array_equal(m, m.T)

    a2, m2 = drift_and_diffusion(GaussianParams(2.0, 0.0, 1.0))
    assert np.array_equal(a2, 2.0 * a)
    assert np.array_equal(m2, 2.0 * m)

    ai, mi = drift_and_diffusion(GaussianParams(1.0, 0.3, 1.0), cascade=False)
    assert ai[2, 0] == 0.0 and ai[3, 1] == 0.0
    assert np.all(mi[:2, 2:] == 0.0)


@pytest.mark.parametrize("n", [0.0, 0.7, 2.3])
def test_lyapunov_fixed_point(n):
    p = GaussianParams(1.0, n, 1.0)
    a, m = drift_and_diffusion(p)
    c_star = (n + 0.5) * np.eye(4)
    assert np.max(np.abs(a @ c_star + c_star @ a.T + m)) < 1e-12
    covs = evolve_cov(CovMatrix(c_star), p, np.linspace(0.0, 3.0, 7))
    for cov in covs:
        assert np.max(np.abs(cov.c - c_star)) < 1e-10


def test_evolve_matches_exact_propagator():
    """RK4 propagation vs the closed map e^-x (1 - xE)(C0 - C*)(1 - xE)^T + C*."""
    rng = np.random.default_rng(3)
    p = GaussianParams(1.0, 0.4, 1.0)
    c_star = (p.N + 0.5) * np.eye(4)
    e_low = np.zeros((4, 4))
    e_low[2, 0] = e_low[3, 1] = 1.0
    l = 0.4 * rng.standard_normal((4, 4))
    c0 = 0.5 * np.eye(4) + l @ l.T
    grid = np.linspace(0.0, 4.0, 9)
    covs = evolve_cov(CovMatrix(c0), p, grid)
    for x, cov in zip(grid, covs):
        prop = np.eye(4) - x * e_low
        ref = math.exp(-x) * prop @ (c0 - c_star) @ prop.T + c_star
        assert np.max(np.abs(cov.c - ref)) < 1e-8


def test_evolve_thermal_diagonal_law():
    p = GaussianParams(1.0, 0.0, 1.0)
    grid = np.linspace(0.0, 5.0, 11)
    covs = evolve_cov(thermal_cov(1.0), p, grid)
    for x, cov in zip(grid, covs):
        assert abs(cov.c[0, 0] - (0.5 + math.exp(-x))) < 1e-9
        # entries outside the flux-relevant sector stay exactly zero
        assert cov.c[0, 1] == 0.0 and cov.c[0, 3] == 0.0
        assert cov.c[1, 2] == 0.0 and cov.c[2, 3] == 0.0


# ---------------------------------------------------------------------------
# fluxes
# ---------------------------------------------------------------------------

def test_flux_examples():
    p0 = GaussianParams(1.0, 0.7, 1.0)
    f = fluxes_from_cov(CovMatrix(1.2 * np.eye(4)), p0)
    assert f.j1 == 0.0 and f.j2 == 0.0 and f.j12 == 0.0
    p = GaussianParams(1.0, 0.0, 1.0)
    f = fluxes_from_cov(thermal_cov(1.0), p)
    assert (f.j1, f.j2, f.j12) == (1.0, 1.0, 0.0)
    f = fluxes_from_cov(correlated_cov(1.0, 0.7, 0.7), p)
    assert abs(f.j1 - 1.0) < 1e-14
    assert abs(f.j2 - 1.0) < 1e-14
    assert abs(f.j12 - 1.4) < 1e-14


def test_fluxes_ignore_decoupled_entries_bitwise():
    """The C12/C14/C23/C34 sector never feeds the fluxes, exactly."""
    p = GaussianParams(1.0, 0.0, 1.0)
    grid = np.linspace(0.0, 2.0, 21)
    base = correlated_cov(1.0, 0.3, 0.2).c
    pert = base.copy()
    pert[0, 1] = pert[1, 0] = 0.17
    pert[0, 3] = pert[3, 0] = -0.05
    pert[1, 2] = pert[2, 1] = 0.11
    pert[2, 3] = pert[3, 2] = 0.07
    ta = simulate_fluxes(CovMatrix(base), p, grid)
    tb = simulate_fluxes(CovMatrix(pert), p, grid)
    assert np.array_equal(ta.j1, tb.j1)
    assert np.array_equal(ta.j2, tb.j2)
    assert np.array_equal(ta.j12, tb.j12)


def test_fluxes_depend_on_correlation_sum_only():
    p = GaussianParams(1.0, 0.0, 1.0)
    grid = np.linspace(0.0, 6.0, 61)
    ta = simulate_fluxes(correlated_cov(1.0, 0.7, 0.3), p, grid)
    tb = simulate_fluxes(correlated_cov(1.0, 0.9, 0.1), p, grid)
    for name in ("j1", "j2", "j12"):
        assert np.max(np.abs(getattr(ta, name) - getattr(tb, name))) < 1e-10


def test_thermal_closed_values():
    p = GaussianParams(1.0, 0.0, 1.0)
    f = thermal_fluxes_closed(p, 1.0)
    e = math.exp(-1.0)
    assert abs(f.j1 - e) < 1e-15
    assert abs(f.j2 - 2.0 * e) < 1e-15
    assert abs(f.j12 + 2.0 * e) < 1e-15
    # at x = 2 the cascade and independent totals cross: both equal 2 e^-2
    f2 = thermal_fluxes_closed(p, 2.0)
    assert abs(f2.j_cascade - 2.0 * math.exp(-2.0)) < 1e-15
    assert abs(f2.j_cascade - f2.j_independent) < 1e-15
    assert thermal_fluxes_closed(GaussianParams(1.0, 0.8, 0.8), 1.3).j1 == 0.0


def test_correlated_closed_against_simulation():
    p = GaussianParams(1.0, 0.0, 1.0)
    assert abs(correlated_fluxes_closed(p, 1.4, 0.0).j_cascade - 3.4) < 1e-14
    grid = np.linspace(0.0, 5.0, 26)
    sim = simulate_fluxes(correlated_cov(1.0, 0.7, 0.7), p, grid)
    for i, x in enumerate(grid):
        ref = correlated_fluxes_closed(p, 1.4, x)
        assert abs(sim.j1[i] - ref.j1) < 1e-8
        assert abs(sim.j2[i] - ref.j2) < 1e-8
        assert abs(sim.j12[i] - ref.j12) < 1e-8
    with pytest.raises(ValueError):
        correlated_fluxes_closed(GaussianParams(1.0, 0.5, 1.0), 1.0, 0.0)
    with pytest.raises(ValueError):
        correlated_fluxes_closed(p, 2.5, 0.0)


def test_opposite_correlations_reduce_to_thermal():
    """c13 = -c24 has zero sum, so the fluxes match the uncorrelated start."""
    p = GaussianParams(1.0, 0.0, 1.0)
    grid = np.linspace(0.0, 4.0, 17)
    sim = simulate_fluxes(correlated_cov(1.0, 0.9, -0.9), p, grid)
    ref = closed_flux_trajectory(p, grid)
    assert np.max(np.abs(sim.j1 - ref.j1)) < 1e-8
    assert np.max(np.abs(sim.j2 - ref.j2)) < 1e-8
    assert np.max(np.abs(sim.j12 - ref.j12)) < 1e-8


def test_closed_trajectory_s_zero_is_thermal():
    p = GaussianParams(1.0, 0.0, 1.0)
    grid = np.linspace(0.0, 8.0, 81)
    a = closed_flux_trajectory(p, grid, s=0.0)
    b = closed_flux_trajectory(p, grid)
    assert np.array_equal(a.j_cascade, b.j_cascade)


# ---------------------------------------------------------------------------
# stationary points of the total flux
# ---------------------------------------------------------------------------

def test_stationary_points_values():
    sp = stationary_points(1.0, 1.4)
    assert sp.t1 == 2.0
    assert sp.t2 == 3.4
    assert sp.j0 == 3.4
    assert abs(sp.j_t1 - 0.6 * math.exp(-2.0)) < 1e-15
    assert abs(sp.j_t2 - 3.4 * math.exp(-3.4)) < 1e-15
    assert sp.minimum_at == 2.0 and sp.maximum_at == 3.4


def test_stationary_points_degenerate_and_negative():
    sp0 = stationary_points(1.0, 0.0)
    assert sp0.inflection
    assert sp0.minimum_at is None and sp0.maximum_at is None
    spn = stationary_points(1.0, -1.0)
    assert spn.t2 == 1.0
    assert spn.minimum_at == 1.0 and spn.maximum_at == 2.0
    with pytest.raises(ValueError):
        stationary_points(1.0, 2.5)


def test_stationary_points_are_extrema_of_closed_flux():
    p = GaussianParams(1.0, 0.0, 1.0)
    sp = stationary_points(1.0, 1.4)
    for t_star, kind in ((sp.t1, "min"), (sp.t2, "max")):
        lo = correlated_fluxes_closed(p, 1.4, t_star - 1e-4).j_cascade
        mid = correlated_fluxes_closed(p, 1.4, t_star).j_cascade
        hi = correlated_fluxes_closed(p, 1.4, t_star + 1e-4).j_cascade
        if kind == "min":
            assert mid < lo and mid < hi
        else:
            assert mid > lo and mid > hi


# ---------------------------------------------------------------------------
# bookkeeping invariants
# ---------------------------------------------------------------------------

def test_energy_balance():
    """Released heat is positive: dU/dt = -(j1 + j2 + j12)."""
    p = GaussianParams(1.0, 0.0, 1.0)
    c0 = correlated_cov(1.0, 0.6, 0.2)
    h = 1e-4
    for t0 in (0.3, 1.1, 2.6):
        covs = evolve_cov(c0, p, np.array([t0 - h, t0, t0 + h]))
        du = (mean_energy(covs[2]) - mean_energy(covs[0])) / (2.0 * h)
        jc = fluxes_from_cov(covs[1], p).j_cascade
        assert abs(du + jc) < 1e-6


def test_exchange_flux_opposes_local_flux():
    p = GaussianParams(1.0, 0.0, 1.0)
    for x in (0.3, 1.0, 4.0):
        f = thermal_fluxes_closed(p, x)
        assert f.j1 > 0.0
        assert f.j12 < 0.0


@settings(max_examples=30, deadline=None)
@given(
    n_s=st.floats(0.1, 2.0),
    c13=st.floats(-1.5, 1.5),
    c24=st.floats(-1.5, 1.5),
)
def test_evolution_preserves_physicality(n_s, c13, c24):
    try:
        c0 = correlated_cov(n_s, c13, c24)
    except ValueError:
        assume(False)
    p = GaussianParams(1.0, 0.0, n_s)
    for cov in evolve_cov(c0, p, np.array([0.0, 0.4, 1.3])):
        assert symplectic_eigenvalues(cov.c)[0] >= 0.5 - 1e-9


def test_cov_text_round_trip():
    c = correlated_cov(1.0, 0.7, -0.123456789012345)
    again = CovMatrix.from_text(c.to_text())
    assert np.array_equal(again.c, c.c)
