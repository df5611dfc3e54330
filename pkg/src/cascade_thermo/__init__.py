"""Heat-flux dynamics of two quantum systems cascaded into one thermal
reservoir: Gaussian-oscillator and two-qubit models, closed-form flux laws,
thermalization-time analysis and correlation measures.

Model-specific operations (state constructors, propagators, closed-form
fluxes) live on the :mod:`cascade_thermo.gaussian` and
:mod:`cascade_thermo.qubits` submodules, which share the flux-trajectory
containers re-exported here.
"""

from . import analysis, gaussian, qubits
from .flux import CSV_HEADER, FluxSample, FluxTrajectory, write_map_csv
from .gaussian import (
    CovMatrix,
    GaussianParams,
    PhysicalityReport,
    StationaryPoints,
    check_physical,
    correlated_cov,
    drift_and_diffusion,
    stationary_points,
    symplectic_eigenvalues,
    thermal_cov,
)
from .qubits import (
    DensityMatrix4,
    Liouvillian,
    QubitParams,
    build_liouvillian,
    coherent_counterexample_state,
    correlated_qubit_state,
    product_thermal_state,
    singlet_state,
    thermal_qubit_state,
    to_collective_basis,
    xi_of_temperature,
)
from .correlations import (
    CorrelationReport,
    SymplecticInvariants,
    concurrence,
    default_seed,
    gaussian_discord,
    log_negativity,
    quantum_discord,
    quantum_discord_report,
    trace_distance_discord,
    trace_distance_discord_report,
)
from .analysis import (
    HeatLedger,
    InsufficientTailError,
    SweepResult,
    TauReport,
    TddFluxReport,
    integrate_heat,
    sweep,
    tau_p,
    verify_tdd_flux_relation,
)

__version__ = "0.1.0"
