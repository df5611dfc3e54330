"""Two qubits damped in cascade by a common thermal reservoir.

The qubit model: two identical two-level systems relax into one
reservoir, the first driving the second through the unidirectional
coupling.  The reservoir temperature enters through the inversion
parameter ``xi = tanh(hbar*omega / 2 k_B T)`` (xi = 1 at zero
temperature, xi -> 0 at infinite temperature), and the initial local
temperature through ``xi_S``.

Density matrices use the product basis (|ee>, |eg>, |ge>, |gg>).  The
dynamics is generated by a real 16x16 matrix acting on the row-major
vectorized density matrix; working in the frame co-rotating at the qubit
frequency removes the free phase rotation, which none of the reported
quantities depend on.  Scaled units as in :mod:`cascade_thermo.gaussian`:
times in 1/gamma, fluxes in hbar*omega*gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from .flux import FluxSample, FluxTrajectory

__all__ = [
    "QubitParams",
    "DensityMatrix4",
    "Liouvillian",
    "xi_of_temperature",
    "thermal_qubit_state",
    "correlated_qubit_state",
    "product_thermal_state",
    "coherent_counterexample_state",
    "singlet_state",
    "build_liouvillian",
    "evolve",
    "simulate_fluxes",
    "fluxes",
    "mean_energy",
    "correlated_fluxes_closed",
    "closed_flux_trajectory",
    "to_collective_basis",
]

_SM = np.array([[0.0, 0.0], [1.0, 0.0]])  # |g><e|
_SP = _SM.T.copy()
_I2 = np.eye(2)

_EIG_TOL = 1e-10


@dataclass(frozen=True)
class QubitParams:
    """Decay rate and the reservoir / initial inversion parameters."""

    gamma: float = 1.0
    xi: float = 1.0
    xi_S: float = 0.0

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not 0.0 <= self.xi <= 1.0:
            raise ValueError(f"reservoir parameter xi must lie in [0, 1], got {self.xi}")
        if not 0.0 <= self.xi_S <= 1.0:
            raise ValueError(f"initial parameter xi_S must lie in [0, 1], got {self.xi_S}")


@dataclass(frozen=True)
class DensityMatrix4:
    """Two-qubit density matrix in the (|ee>, |eg>, |ge>, |gg>) basis.

    The constructor enforces hermiticity, unit trace and positivity
    (eigenvalues >= -1e-10), so propagation failures surface immediately.
    """

    rho: NDArray[np.complex128]

    def __post_init__(self) -> None:
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError(f"density matrix must be 4x4, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError("density matrix must be hermitian")
        tr = float(rho.trace().real)
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"density matrix must have unit trace, got {tr!r}")
        min_eig = float(np.linalg.eigvalsh(rho)[0])
        if min_eig < -_EIG_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {min_eig:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.rho)[0])

    def to_text(self) -> str:
        """Serialize as four rows of ``re+imi`` entries."""
        return "\n".join(
            " ".join(f"{z.real:.17e}{z.imag:+.17e}i" for z in row) for row in self.rho
        ) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DensityMatrix4":
        rows = [
            [complex(tok[:-1].replace("i", "j") + "j") if tok.endswith("i") else complex(tok)
             for tok in line.split()]
            for line in text.strip().splitlines()
        ]
        return cls(np.array(rows))


@dataclass(frozen=True)
class Liouvillian:
    """Real 16x16 generator of the vectorized master equation."""

    matrix: NDArray[np.float64]
    gamma: float
    xi: float
    cascade: bool = True


def xi_of_temperature(temperature: float) -> float:
    """Inversion parameter xi = tanh(1 / 2T) with T in hbar*omega/k_B units."""
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0:
        return 1.0
    return math.tanh(0.5 / temperature)


def _thermal_1q(xi: float) -> NDArray[np.float64]:
    return np.diag([(1.0 - xi) / 2.0, (1.0 + xi) / 2.0])


def product_thermal_state(xi1: float, xi2: float) -> DensityMatrix4:
    """Product of two local thermal states with inversions xi1, xi2."""
    for name, v in (("xi1", xi1), ("xi2", xi2)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    return DensityMatrix4(np.kron(_thermal_1q(xi1), _thermal_1q(xi2)))


def thermal_qubit_state(xi_s: float) -> DensityMatrix4:
    """Both qubits locally thermal at xi_S, no correlations."""
    return product_thermal_state(xi_s, xi_s)


def correlated_qubit_state(xi_s: float, rho23: complex) -> DensityMatrix4:
    """Locally-thermal X state with an exchange coherence.

    ``rho23`` is the scaled coherence amplitude; the stored matrix element
    between |eg> and |ge> is rho23 / 4, and positivity restricts
    |rho23| <= 1 - xi_S**2.  rho23 = 0 reproduces the thermal state.
    """
    if not 0.0 <= xi_s <= 1.0:
        raise ValueError(f"xi_S must lie in [0, 1], got {xi_s}")
    bound = 1.0 - xi_s * xi_s
    if abs(rho23) > bound + 1e-12:
        raise ValueError(
            f"positivity requires |rho23| <= 1 - xi_S^2 = {bound} (got |rho23| = {abs(rho23)})"
        )
    rho = np.array(thermal_qubit_state(xi_s).rho, dtype=complex)
    rho[1, 2] = complex(rho23) / 4.0
    rho[2, 1] = np.conj(rho23) / 4.0
    return DensityMatrix4(rho)


def coherent_counterexample_state(xi: float, xi2: float) -> DensityMatrix4:
    """Pure first qubit with thermal populations for inversion xi, times a
    thermal second qubit.

    The first qubit carries the maximal real coherence compatible with the
    thermal populations ((1-xi)/2 excited, (1+xi)/2 ground), so it holds
    the same local energy as the thermal state at xi while starting pure.
    """
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi}")
    if not 0.0 <= xi2 <= 1.0:
        raise ValueError(f"xi2 must lie in [0, 1], got {xi2}")
    psi = np.array([math.sqrt((1.0 - xi) / 2.0), math.sqrt((1.0 + xi) / 2.0)])
    rho1 = np.outer(psi, psi)
    return DensityMatrix4(np.kron(rho1, _thermal_1q(xi2)))


def singlet_state() -> DensityMatrix4:
    """Projector onto (|eg> - |ge>) / sqrt(2)."""
    v = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
    return DensityMatrix4(np.outer(v, v).astype(complex))


# ---------------------------------------------------------------------------
# generator
# ---------------------------------------------------------------------------

def _half_generator_table(xi: float) -> NDArray[np.float64]:
    """The generator divided by gamma/2, rows and columns in row-major
    (11),(12),(13),(14),(21),... order of the density-matrix indices."""
    a = 1.0 + xi
    b = 1.0 - xi
    return np.array([
        [-2 * a, 0, 0, 0,   0, b, b, 0,   0, b, b, 0,   0, 0, 0, 0],
        [0, -2 - xi, -b, 0,   0, 0, 0, b,   0, 0, 0, b,   0, 0, 0, 0],
        [0, -a, -2 - xi, 0,   0, 0, 0, b,   0, 0, 0, b,   0, 0, 0, 0],
        [0, 0, 0, -2,   0, 0, 0, 0,   0, 0, 0, 0,   0, 0, 0, 0],
        [0, 0, 0, 0,   -2 - xi, 0, 0, 0,   -b, 0, 0, 0,   0, b, b, 0],
        [a, 0, 0, 0,   0, -2, -b, 0,   0, -b, 0, 0,   0, 0, 0, b],
        [a, 0, 0, 0,   0, -a, -2, 0,   0, 0, -b, 0,   0, 0, 0, b],
        [0, a, a, 0,   0, 0, 0, -2 + xi,   0, 0, 0, -b,   0, 0, 0, 0],
        [0, 0, 0, 0,   -a, 0, 0, 0,   -2 - xi, 0, 0, 0,   0, b, b, 0],
        [a, 0, 0, 0,   0, -a, 0, 0,   0, -2, -b, 0,   0, 0, 0, b],
        [a, 0, 0, 0,   0, 0, -a, 0,   0, -a, -2, 0,   0, 0, 0, b],
        [0, a, a, 0,   0, 0, 0, -a,   0, 0, 0, -2 + xi,   0, 0, 0, 0],
        [0, 0, 0, 0,   0, 0, 0, 0,   0, 0, 0, 0,   -2, 0, 0, 0],
        [0, 0, 0, 0,   a, 0, 0, 0,   a, 0, 0, 0,   0, -2 + xi, -b, 0],
        [0, 0, 0, 0,   a, 0, 0, 0,   a, 0, 0, 0,   0, -a, -2 + xi, 0],
        [0, 0, 0, 0,   0, a, a, 0,   0, a, a, 0,   0, 0, 0, 2 * (xi - 1)],
    ], dtype=float)


def _left(a: NDArray) -> NDArray:
    """Superoperator of rho -> a @ rho on the row-major vectorization."""
    return np.kron(a, np.eye(4))


def _right(a: NDArray) -> NDArray:
    """Superoperator of rho -> rho @ a."""
    return np.kron(np.eye(4), a.T)


def _sandwich(a: NDArray, b: NDArray) -> NDArray:
    """Superoperator of rho -> a @ rho @ b."""
    return np.kron(a, b.T)


def _dissipator_superoperator(xi: float, cascade: bool) -> NDArray[np.float64]:
    """Assemble the generator (per unit gamma) from the dissipator definitions."""
    a = 1.0 + xi
    b = 1.0 - xi
    s1m, s1p = np.kron(_SM, _I2), np.kron(_SP, _I2)
    s2m, s2p = np.kron(_I2, _SM), np.kron(_I2, _SP)

    def local(sm: NDArray, sp: NDArray) -> NDArray:
        down = 2.0 * _sandwich(sm, sp) - _right(sp @ sm) - _left(sp @ sm)
        up = 2.0 * _sandwich(sp, sm) - _right(sm @ sp) - _left(sm @ sp)
        return 0.25 * (a * down + b * up)

    k = local(s1m, s1p) + local(s2m, s2p)
    if cascade:
        down = (
            _sandwich(s1m, s2p) - _left(s1m @ s2p)
            + _sandwich(s2m, s1p) - _right(s2m @ s1p)
        )
        up = (
            _sandwich(s1p, s2m) - _left(s1p @ s2m)
            + _sandwich(s2p, s1m) - _right(s2p @ s1m)
        )
        k = k + 0.5 * (a * down + b * up)
    return k


def build_liouvillian(params: QubitParams, cascade: bool = True) -> Liouvillian:
    """Build the 16x16 generator, cross-checking two independent constructions.

    The cascade generator is assembled once from the operator-form
    dissipators and once from the tabulated matrix; any entrywise
    discrepancy beyond 1e-12 raises immediately rather than silently
    propagating a transcription error.
    """
    k_ops = params.gamma * _dissipator_superoperator(params.xi, cascade)
    if cascade:
        k_table = 0.5 * params.gamma * _half_generator_table(params.xi)
        dev = float(np.max(np.abs(k_ops - k_table)))
        if dev > 1e-12 * max(1.0, params.gamma):
            raise RuntimeError(
                f"liouvillian cross-check failed: operator-form and tabulated "
                f"generators differ by {dev:.3e}"
            )
    return Liouvillian(matrix=k_ops, gamma=params.gamma, xi=params.xi, cascade=cascade)


# ---------------------------------------------------------------------------
# propagation and fluxes
# ---------------------------------------------------------------------------

def _evolve_vec(
    rho0: NDArray[np.complex128],
    params: QubitParams,
    t_grid: NDArray[np.float64],
    cascade: bool,
) -> NDArray[np.complex128]:
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or len(t) == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if t[0] < 0 or (len(t) > 1 and np.any(np.diff(t) <= 0)):
        raise ValueError("t_grid must be strictly increasing and start at t >= 0")

    k_bar = build_liouvillian(params, cascade=cascade).matrix / params.gamma
    props: dict[float, NDArray[np.float64]] = {}

    out = np.empty((len(t), 16), dtype=complex)
    v = np.asarray(rho0, dtype=complex).reshape(16).copy()
    prev = 0.0
    for i, ti in enumerate(t):
        span = ti - prev
        if span > 0:
            key = round(span, 15)
            if key not in props:
                props[key] = scipy.linalg.expm(k_bar * span)
            v = props[key] @ v
        out[i] = v
        prev = ti
    return out


def _hermitized(v: NDArray[np.complex128]) -> NDArray[np.complex128]:
    rho = v.reshape(4, 4)
    return 0.5 * (rho + rho.conj().T)


def evolve(
    rho0: DensityMatrix4, params: QubitParams, t_grid: NDArray[np.float64],
    cascade: bool = True,
) -> list[DensityMatrix4]:
    """Density matrices along a monotone time grid (1/gamma units).

    Each sample passes through the :class:`DensityMatrix4` constructor, so
    any loss of positivity beyond tolerance raises instead of being
    returned.
    """
    vecs = _evolve_vec(rho0.rho, params, np.asarray(t_grid, dtype=float), cascade)
    return [DensityMatrix4(_hermitized(v)) for v in vecs]


def fluxes(rho: DensityMatrix4, params: QubitParams, t: float = 0.0) -> FluxSample:
    """Instantaneous heat fluxes of a state, in hbar*omega*gamma units."""
    p = rho.rho
    a = 1.0 + params.xi
    b = 1.0 - params.xi
    j1 = a * (p[0, 0].real + p[1, 1].real) - b * (p[2, 2].real + p[3, 3].real)
    j2 = a * (p[0, 0].real + p[2, 2].real) - b * (p[1, 1].real + p[3, 3].real)
    j12 = 2.0 * params.xi * (p[1, 2] + p[2, 1]).real
    return FluxSample(float(t), float(j1), float(j2), float(j12))


def simulate_fluxes(
    rho0: DensityMatrix4, params: QubitParams, t_grid: NDArray[np.float64],
    cascade: bool = True,
) -> FluxTrajectory:
    """Propagate and return the flux trajectory on the grid."""
    t = np.asarray(t_grid, dtype=float)
    v = _evolve_vec(rho0.rho, params, t, cascade)
    a = 1.0 + params.xi
    b = 1.0 - params.xi
    p11, p22, p33, p44 = (v[:, i].real for i in (0, 5, 10, 15))
    j1 = a * (p11 + p22) - b * (p33 + p44)
    j2 = a * (p11 + p33) - b * (p22 + p44)
    if cascade:
        j12 = 2.0 * params.xi * (v[:, 6] + v[:, 9]).real
    else:
        j12 = np.zeros(len(t))
    return FluxTrajectory(t=t, j1=j1, j2=j2, j12=j12)


def mean_energy(rho: DensityMatrix4) -> float:
    """Total mean energy rho_11 - rho_44, in hbar*omega units (zero point at
    the single-excitation manifold)."""
    return float(rho.rho[0, 0].real - rho.rho[3, 3].real)


# ---------------------------------------------------------------------------
# closed-form flux laws (zero-temperature reservoir)
# ---------------------------------------------------------------------------

def correlated_fluxes_closed(
    xi_s: float, re_rho23: float, t: float, xi: float = 1.0
) -> FluxSample:
    """Closed-form fluxes for the locally-thermal X family at xi = 1.

    ``re_rho23`` is the real part of the scaled initial coherence; only a
    zero-temperature reservoir admits these closed forms.
    """
    if xi != 1.0:
        raise ValueError("closed-form qubit fluxes require a zero-temperature reservoir (xi = 1)")
    if not 0.0 <= xi_s <= 1.0:
        raise ValueError(f"xi_S must lie in [0, 1], got {xi_s}")
    if abs(re_rho23) > 1.0 - xi_s * xi_s + 1e-12:
        raise ValueError(f"|re_rho23| <= 1 - xi_S^2 required, got {re_rho23}")
    x = float(t)
    e = math.exp(-x)
    w = 1.0 - xi_s
    j1 = w * e
    j2 = e * ((1.0 + x * x) * w + 2.0 * (1.0 - x - e) * w * w - x * re_rho23)
    j12 = e * (2.0 * (1.0 - e) * w * w - 2.0 * x * w + re_rho23)
    return FluxSample(x, j1, j2, j12)


def closed_flux_trajectory(
    xi_s: float, re_rho23: float, t_grid: NDArray[np.float64]
) -> FluxTrajectory:
    """Vectorized version of :func:`correlated_fluxes_closed` (xi = 1)."""
    if not 0.0 <= xi_s <= 1.0:
        raise ValueError(f"xi_S must lie in [0, 1], got {xi_s}")
    if abs(re_rho23) > 1.0 - xi_s * xi_s + 1e-12:
        raise ValueError(f"|re_rho23| <= 1 - xi_S^2 required, got {re_rho23}")
    x = np.asarray(t_grid, dtype=float)
    e = np.exp(-x)
    w = 1.0 - xi_s
    j1 = w * e
    j2 = e * ((1.0 + x * x) * w + 2.0 * (1.0 - x - e) * w * w - x * re_rho23)
    j12 = e * (2.0 * (1.0 - e) * w * w - 2.0 * x * w + re_rho23)
    return FluxTrajectory(t=x, j1=j1, j2=j2, j12=j12)


_SQ2 = 1.0 / math.sqrt(2.0)
_V_COLLECTIVE = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, _SQ2, _SQ2, 0.0],
    [0.0, _SQ2, -_SQ2, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])


def to_collective_basis(rho: DensityMatrix4) -> DensityMatrix4:
    """Rewrite a state in the (|ee>, |Psi+>, |Psi->, |gg>) basis, where
    |Psi+-> = (|eg> +- |ge>) / sqrt(2)."""
    return DensityMatrix4(_V_COLLECTIVE.T @ rho.rho @ _V_COLLECTIVE)
