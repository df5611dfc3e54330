"""Two bosonic modes damped in cascade by a common thermal reservoir.

The Gaussian model: two harmonic oscillators with equal frequency relax
into one reservoir, the output of the first mode driving the second
(unidirectional coupling).  States are 4x4 covariance matrices in the
quadrature ordering (X1, Y1, X2, Y2); first moments are zero throughout.

Scaled units are used everywhere: times in 1/gamma, energies in
hbar*omega, heat fluxes in hbar*omega*gamma.  Positive flux means heat
released to the reservoir.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .flux import FluxSample, FluxTrajectory

__all__ = [
    "GaussianParams",
    "CovMatrix",
    "PhysicalityReport",
    "StationaryPoints",
    "thermal_cov",
    "correlated_cov",
    "check_physical",
    "symplectic_eigenvalues",
    "drift_and_diffusion",
    "evolve_cov",
    "simulate_fluxes",
    "fluxes_from_cov",
    "mean_energy",
    "thermal_fluxes_closed",
    "correlated_fluxes_closed",
    "closed_flux_trajectory",
    "family_cov_closed",
    "stationary_points",
]

#: symplectic form for the (X1, Y1, X2, Y2) ordering
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

# lower-triangular coupling block: mode 1 output feeds mode 2
_E = np.zeros((4, 4))
_E[2, 0] = 1.0
_E[3, 1] = 1.0

_SYMP_TOL = 1e-10


@dataclass(frozen=True)
class GaussianParams:
    """Model parameters.

    Attributes
    ----------
    gamma : float
        Decay rate (sets the time and flux units; does not affect any
        reported number in scaled units).
    N : float
        Mean thermal occupation of the reservoir.
    N_S : float
        Mean thermal occupation of each mode at t = 0.
    """

    gamma: float = 1.0
    N: float = 0.0
    N_S: float = 1.0

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.N < 0:
            raise ValueError(f"reservoir occupation N must be >= 0, got {self.N}")
        if self.N_S < 0:
            raise ValueError(f"initial occupation N_S must be >= 0, got {self.N_S}")


@dataclass(frozen=True)
class CovMatrix:
    """Symmetric 4x4 covariance matrix in the (X1, Y1, X2, Y2) ordering."""

    c: NDArray[np.float64]

    def __post_init__(self) -> None:
        c = np.array(self.c, dtype=float)
        if c.shape != (4, 4):
            raise ValueError(f"covariance matrix must be 4x4, got shape {c.shape}")
        if np.max(np.abs(c - c.T)) > 1e-12:
            raise ValueError("covariance matrix must be symmetric")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def to_text(self) -> str:
        """Serialize as four whitespace-separated rows."""
        return "\n".join(" ".join(f"{v:.17e}" for v in row) for row in self.c) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CovMatrix":
        rows = [[float(v) for v in line.split()] for line in text.strip().splitlines()]
        return cls(np.array(rows))


@dataclass(frozen=True)
class PhysicalityReport:
    """Outcome of the uncertainty-principle check on a covariance matrix."""

    physical: bool
    nu_minus: float
    nu_plus: float
    min_eigenvalue: float
    reason: str = ""


def symplectic_eigenvalues(c: NDArray[np.float64]) -> tuple[float, float]:
    """Symplectic spectrum (nu_minus, nu_plus) from the two-mode block invariants."""
    c = np.asarray(c, dtype=float)
    i_a = np.linalg.det(c[:2, :2])
    i_b = np.linalg.det(c[2:, 2:])
    i_c = np.linalg.det(c[:2, 2:])
    i_s = np.linalg.det(c)
    delta = i_a + i_b + 2.0 * i_c
    root = math.sqrt(max(delta * delta - 4.0 * i_s, 0.0))
    nu_minus = math.sqrt(max((delta - root) / 2.0, 0.0))
    nu_plus = math.sqrt(max((delta + root) / 2.0, 0.0))
    return nu_minus, nu_plus


def check_physical(cov: CovMatrix | NDArray[np.float64]) -> PhysicalityReport:
    """Check positivity and the uncertainty bound nu_minus >= 1/2.

    Returns a report rather than raising, so callers can surface which
    condition failed.  Boundary states (nu_minus = 1/2 exactly) pass.
    """
    c = cov.c if isinstance(cov, CovMatrix) else np.asarray(cov, dtype=float)
    if c.shape != (4, 4) or np.max(np.abs(c - c.T)) > 1e-12:
        raise ValueError("check_physical expects a symmetric 4x4 matrix")
    min_eig = float(np.linalg.eigvalsh(c)[0])
    nu_minus, nu_plus = symplectic_eigenvalues(c)
    if min_eig < -_SYMP_TOL:
        return PhysicalityReport(
            False, nu_minus, nu_plus, min_eig,
            f"covariance matrix not positive semidefinite (min eigenvalue {min_eig:.3e})",
        )
    if nu_minus < 0.5 - _SYMP_TOL:
        return PhysicalityReport(
            False, nu_minus, nu_plus, min_eig,
            f"symplectic eigenvalue nu_minus = {nu_minus:.6g} violates the bound nu_minus >= 1/2",
        )
    return PhysicalityReport(True, nu_minus, nu_plus, min_eig)


def thermal_cov(n_s: float) -> CovMatrix:
    """Uncorrelated two-mode thermal state, C = (N_S + 1/2) * identity."""
    if n_s < 0:
        raise ValueError(f"N_S must be >= 0, got {n_s}")
    return CovMatrix((n_s + 0.5) * np.eye(4))


def correlated_cov(n_s: float, c13: float, c24: float) -> CovMatrix:
    """Locally-thermal state with X1X2 and Y1Y2 correlations.

    Both modes carry occupation ``n_s``; the only nonzero off-diagonal
    entries are C[0,2] = c13 and C[1,3] = c24.  Rejects parameter
    combinations that violate positivity or the uncertainty bound, naming
    the failed condition.
    """
    if n_s < 0:
        raise ValueError(f"N_S must be >= 0, got {n_s}")
    if n_s == 0 and (abs(c13) > 1e-12 or abs(c24) > 1e-12):
        raise ValueError("N_S = 0 admits no correlations: c13 and c24 must both be 0")
    d = n_s + 0.5
    if abs(c13) >= d or abs(c24) >= d:
        raise ValueError(
            f"covariance positivity requires |c13| < N_S + 1/2 and |c24| < N_S + 1/2 "
            f"(got c13={c13}, c24={c24}, N_S={n_s})"
        )
    c = d * np.eye(4)
    c[0, 2] = c[2, 0] = c13
    c[1, 3] = c[3, 1] = c24
    report = check_physical(c)
    if not report.physical:
        raise ValueError(f"unphysical correlations (c13={c13}, c24={c24}): {report.reason}")
    return CovMatrix(c)


def drift_and_diffusion(
    params: GaussianParams, cascade: bool = True
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Drift matrix A and diffusion matrix M of dC/dt = A C + C A^T + M.

    With ``cascade=False`` the unidirectional coupling is dropped (two
    independently damped modes), i.e. the cross blocks of A and M vanish.
    """
    g = params.gamma
    if cascade:
        a = -g * (0.5 * np.eye(4) + _E)
        m = g * (params.N + 0.5) * (np.eye(4) + _E + _E.T)
    else:
        a = -g * 0.5 * np.eye(4)
        m = g * (params.N + 0.5) * np.eye(4)
    return a, m


# ---------------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------------

def _rk4_step_operator(
    a_bar: NDArray[np.float64], m_bar: NDArray[np.float64], h: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """One fixed-step RK4 update of the (affine) moment equation as a linear
    operator on vec(C): vec(C') = L vec(C) + d.

    Because the update map is applied to basis matrices, the exact zero
    pattern of the drift is inherited by L: covariance families that the
    continuous flow leaves decoupled stay decoupled to the last bit.
    """

    def rhs(c: NDArray[np.float64]) -> NDArray[np.float64]:
        return a_bar @ c + c @ a_bar.T + m_bar

    def step(c: NDArray[np.float64]) -> NDArray[np.float64]:
        k1 = rhs(c)
        k2 = rhs(c + 0.5 * h * k1)
        k3 = rhs(c + 0.5 * h * k2)
        k4 = rhs(c + h * k3)
        return c + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    d = step(np.zeros((4, 4))).reshape(16)
    lmat = np.empty((16, 16))
    basis = np.zeros((4, 4))
    for j in range(16):
        basis.flat[:] = 0.0
        basis.flat[j] = 1.0
        lmat[:, j] = step(basis).reshape(16) - d
    return lmat, d


def _evolve_vec(
    c0: NDArray[np.float64],
    params: GaussianParams,
    t_grid: NDArray[np.float64],
    cascade: bool,
    step: float,
) -> NDArray[np.float64]:
    """Propagate vec(C) over the grid (times in 1/gamma units)."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or len(t) == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if t[0] < 0 or (len(t) > 1 and np.any(np.diff(t) <= 0)):
        raise ValueError("t_grid must be strictly increasing and start at t >= 0")
    if not step > 0:
        raise ValueError(f"integration step must be positive, got {step}")

    a, m = drift_and_diffusion(params, cascade=cascade)
    a_bar, m_bar = a / params.gamma, m / params.gamma

    ops: dict[float, tuple[NDArray[np.float64], NDArray[np.float64]]] = {}

    def operator(h: float) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        key = round(h, 15)
        if key not in ops:
            ops[key] = _rk4_step_operator(a_bar, m_bar, h)
        return ops[key]

    out = np.empty((len(t), 16))
    v = np.asarray(c0, dtype=float).reshape(16).copy()
    prev = 0.0
    for k, tk in enumerate(t):
        span = tk - prev
        if span > 0:
            n_sub = max(1, math.ceil(span / step - 1e-12))
            lmat, d = operator(span / n_sub)
            for _ in range(n_sub):
                v = lmat @ v + d
        out[k] = v
        prev = tk
    return out


def evolve_cov(
    c0: CovMatrix,
    params: GaussianParams,
    t_grid: NDArray[np.float64],
    cascade: bool = True,
    step: float = 1e-3,
) -> list[CovMatrix]:
    """Covariance matrices along a monotone time grid (1/gamma units)."""
    vecs = _evolve_vec(c0.c, params, np.asarray(t_grid, dtype=float), cascade, step)
    return [CovMatrix(v.reshape(4, 4)) for v in vecs]


def fluxes_from_cov(
    cov: CovMatrix, params: GaussianParams, t: float = 0.0, cascade: bool = True
) -> FluxSample:
    """Instantaneous heat fluxes of a state, in hbar*omega*gamma units.

    j1 and j2 are the local mode-reservoir exchange rates; j12 is the
    cascade contribution (identically zero for independent baths).
    """
    c = cov.c
    occ = params.N + 0.5
    j1 = 0.5 * (c[0, 0] + c[1, 1]) - occ
    j2 = 0.5 * (c[2, 2] + c[3, 3]) - occ
    j12 = (c[0, 2] + c[1, 3]) if cascade else 0.0
    return FluxSample(float(t), float(j1), float(j2), float(j12))


def simulate_fluxes(
    c0: CovMatrix,
    params: GaussianParams,
    t_grid: NDArray[np.float64],
    cascade: bool = True,
    step: float = 1e-3,
) -> FluxTrajectory:
    """Integrate the moment equation and return the flux trajectory."""
    t = np.asarray(t_grid, dtype=float)
    v = _evolve_vec(c0.c, params, t, cascade, step)
    occ = params.N + 0.5
    j1 = 0.5 * (v[:, 0] + v[:, 5]) - occ
    j2 = 0.5 * (v[:, 10] + v[:, 15]) - occ
    j12 = (v[:, 2] + v[:, 7]) if cascade else np.zeros(len(t))
    return FluxTrajectory(t=t, j1=j1, j2=j2, j12=j12)


def mean_energy(cov: CovMatrix) -> float:
    """Total mean energy (1/2) Tr C, in hbar*omega units."""
    return 0.5 * float(np.trace(cov.c))


# ---------------------------------------------------------------------------
# closed-form flux laws
# ---------------------------------------------------------------------------

def thermal_fluxes_closed(params: GaussianParams, t: float) -> FluxSample:
    """Closed-form fluxes for an uncorrelated thermal start at N_S.

    Valid for any reservoir occupation N; ``t`` in 1/gamma units.
    """
    x = float(t)
    j1 = (params.N_S - params.N) * math.exp(-x)
    return FluxSample(x, j1, (1.0 + x * x) * j1, -2.0 * x * j1)


def correlated_fluxes_closed(params: GaussianParams, s: float, t: float) -> FluxSample:
    """Closed-form fluxes for the correlated family, s = c13 + c24.

    Only the correlation sum enters.  Restricted to a zero-temperature
    reservoir (N = 0); finite N has no closed form here and is rejected.
    """
    if params.N != 0:
        raise ValueError("closed-form correlated fluxes require a zero-temperature reservoir (N = 0)")
    if abs(s) > 2.0 * params.N_S + 1e-12:
        raise ValueError(f"|c13 + c24| <= 2 N_S required, got s={s} with N_S={params.N_S}")
    x = float(t)
    e = math.exp(-x)
    j1 = params.N_S * e
    j2 = (1.0 + x * x) * j1 - x * s * e
    j12 = -2.0 * x * j1 + s * e
    return FluxSample(x, j1, j2, j12)


def closed_flux_trajectory(
    params: GaussianParams, t_grid: NDArray[np.float64], s: float = 0.0
) -> FluxTrajectory:
    """Vectorized closed-form trajectory (thermal when s = 0)."""
    x = np.asarray(t_grid, dtype=float)
    e = np.exp(-x)
    if s == 0.0:
        j1 = (params.N_S - params.N) * e
        return FluxTrajectory(t=x, j1=j1, j2=(1.0 + x * x) * j1, j12=-2.0 * x * j1)
    if params.N != 0:
        raise ValueError("closed-form correlated fluxes require a zero-temperature reservoir (N = 0)")
    if abs(s) > 2.0 * params.N_S + 1e-12:
        raise ValueError(f"|c13 + c24| <= 2 N_S required, got s={s} with N_S={params.N_S}")
    j1 = params.N_S * e
    return FluxTrajectory(
        t=x,
        j1=j1,
        j2=(1.0 + x * x) * j1 - x * s * e,
        j12=-2.0 * x * j1 + s * e,
    )


def family_cov_closed(params: GaussianParams, c13: float, c24: float, t: float) -> CovMatrix:
    """Closed solution of the moment equation for the correlated family.

    Valid for any reservoir occupation N.  The family keeps the
    (X1X2, Y1Y2) structure at all times.
    """
    x = float(t)
    e = math.exp(-x)
    occ = params.N + 0.5
    d0 = params.N_S - params.N
    c = np.zeros((4, 4))
    c[0, 0] = c[1, 1] = occ + d0 * e
    c[0, 2] = c[2, 0] = e * (c13 - d0 * x)
    c[1, 3] = c[3, 1] = e * (c24 - d0 * x)
    c[2, 2] = occ + e * (d0 - 2.0 * c13 * x + d0 * x * x)
    c[3, 3] = occ + e * (d0 - 2.0 * c24 * x + d0 * x * x)
    return CovMatrix(c)


@dataclass(frozen=True)
class StationaryPoints:
    """Stationary points of the total cascade flux for the correlated family.

    Times in 1/gamma units, flux values in hbar*omega*gamma units.  When
    the correlation sum vanishes the two candidates merge into a single
    inflection point and no extremum ordering is defined.
    """

    t1: float
    t2: float
    j0: float
    j_t1: float
    j_t2: float
    inflection: bool
    minimum_at: float | None
    maximum_at: float | None


def stationary_points(n_s: float, s: float) -> StationaryPoints:
    """Analytic stationary points of J_cascade(t) = J1 + J2 + J12.

    ``s = c13 + c24`` is the correlation sum of the initial state;
    requires N_S > 0, |s| <= 2 N_S, zero-temperature reservoir implied.
    """
    if not n_s > 0:
        raise ValueError(f"N_S must be positive, got {n_s}")
    if abs(s) > 2.0 * n_s + 1e-12:
        raise ValueError(f"|s| <= 2 N_S required, got s={s} with N_S={n_s}")
    t1 = 2.0
    t2 = 2.0 * (1.0 + s / (2.0 * n_s))
    j0 = 2.0 * n_s + s
    j_t1 = (2.0 * n_s - s) * math.exp(-2.0)
    j_t2 = (2.0 * n_s + s) * math.exp(-(2.0 + s / n_s))
    if s == 0.0:
        return StationaryPoints(t1, t2, j0, j_t1, j_t2, True, None, None)
    if s > 0:
        return StationaryPoints(t1, t2, j0, j_t1, j_t2, False, t1, t2)
    return StationaryPoints(t1, t2, j0, j_t1, j_t2, False, t2, t1)
