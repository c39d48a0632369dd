"""Closed-form dynamics of two-qubit X states.

The model is the anisotropic Heisenberg exchange between two qubits in a
uniform z field.  X-shaped density matrices stay X shaped under it, so
evolution, fidelity, stationarity classification, and period detection
all come in closed form here, each backed by a series-expm oracle the
validation suite compares against.
"""
from .dynamics import (
    FidelityTrace,
    StationarityVerdict,
    TimeGrid,
    c_difference,
    c_difference_cos2,
    c_difference_predicted,
    classify,
    detect_period,
    evolve_closed,
    evolve_oracle,
    nominal_period,
    overlap_evolved,
    scan,
)
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DomainError,
    InsufficientSpanError,
    InvalidInputError,
    NormalizationError,
    PositivityError,
    RangeError,
    StateFileError,
    XdynError,
)
from .fidelity import (
    DensityMatrix,
    fidelity,
    fidelity_bell_diagonal,
    overlap_bloch_form,
    overlap_population_form,
    purity,
)
from .linalg import eigvals_hermitian, expm, trace_product
from .model import (
    CouplingParams,
    DerivedFrequencies,
    Propagator,
    Spectrum,
    frequencies,
    hamiltonian,
    propagator,
    sinc,
    spectrum,
)
from .states import (
    BlochVector,
    GaugeFix,
    XState,
    bloch_from_density,
    from_bloch,
    gauge_fix,
    local_rotation,
    preset_bell_diagonal,
    preset_p_mixture,
    preset_werner,
    state_from_json,
    to_bloch,
    to_density,
    xstate_matrix,
)
from .validate import CheckResult, ErrataFinding, ValidationReport, run_validation

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "CheckResult",
    "ConsistencyError",
    "ConvergenceError",
    "CouplingParams",
    "DensityMatrix",
    "DerivedFrequencies",
    "DomainError",
    "ErrataFinding",
    "FidelityTrace",
    "GaugeFix",
    "InsufficientSpanError",
    "InvalidInputError",
    "NormalizationError",
    "PositivityError",
    "Propagator",
    "RangeError",
    "Spectrum",
    "StateFileError",
    "StationarityVerdict",
    "TimeGrid",
    "ValidationReport",
    "XState",
    "XdynError",
    "bloch_from_density",
    "c_difference",
    "c_difference_cos2",
    "c_difference_predicted",
    "classify",
    "detect_period",
    "eigvals_hermitian",
    "evolve_closed",
    "evolve_oracle",
    "expm",
    "fidelity",
    "fidelity_bell_diagonal",
    "frequencies",
    "from_bloch",
    "gauge_fix",
    "hamiltonian",
    "local_rotation",
    "nominal_period",
    "overlap_bloch_form",
    "overlap_evolved",
    "overlap_population_form",
    "preset_bell_diagonal",
    "preset_p_mixture",
    "preset_werner",
    "propagator",
    "purity",
    "run_validation",
    "scan",
    "sinc",
    "spectrum",
    "state_from_json",
    "to_bloch",
    "to_density",
    "trace_product",
    "xstate_matrix",
]
