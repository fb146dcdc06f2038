"""Non-Hermitian two-mode boson model: symplectic diagonalization,
truncated-Fock verification, and grand-canonical thermodynamics."""

from .errors import (
    ConfigError,
    DegenerateFamilyError,
    DivergenceError,
    PairingError,
    PseudobosonError,
    RegimeError,
    TruncationError,
    ValidationError,
)
from .model import ModelParameters
from .symplectic import (
    OMEGA,
    CharacteristicCoefficients,
    DynamicalMatrix,
    LadderCoefficients,
    LadderKind,
    Regime,
    SymplecticEigenbasis,
    adjoint_coefficients,
    analytic_eigenvalues,
    build_adjoint_dynamical_matrix,
    build_dynamical_matrix,
    characteristic_coefficients,
    commutator,
    compute_eigenbasis,
    diagonal_form,
    energy_levels,
    level_table,
    symplectic_product,
)
from .fock import (
    BiorthogonalFamily,
    ExpansionResult,
    MetricOperator,
    TruncatedSpace,
    assemble_hamiltonian,
    build_families,
    build_metric,
    build_space,
    evolve,
    expansion_coefficients,
    ladder_matrix,
    oracle_spectrum,
    physical_hamiltonian,
    physical_inner_product,
    rescale_family,
    vacuum_state,
)
from .thermo import (
    FIGURE1_BETAS,
    RangeBoundary,
    SpectrumSpec,
    SweepPoint,
    ThermoPoint,
    TraceResult,
    default_mu_grid,
    entropy,
    entropy_from_occupations,
    expected_energy_number,
    log_partition_function,
    numerical_range_boundary,
    occupations,
    oracle_trace,
    partition_function,
    sweep_figure1,
    thermo_point,
    wedge_violation,
)
from .checks import DEFAULT_TOLERANCES, CheckRecord, run_checks

__version__ = "0.1.0"
