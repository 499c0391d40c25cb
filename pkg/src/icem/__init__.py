"""Informationally complete entanglement measures for multi-qudit states.

The measure of a bipartite pure state is built from the full moment vector
(Tr rho_A^2, ..., Tr rho_A^(r+1)) of one reduced state, which determines the
Schmidt spectrum exactly; mixed states get a convex-roof upper bound, and a
statevector simulator reproduces the multi-copy SWAP-test estimator of the
same moments.
"""

from .charpoly import (
    CharCoeffs,
    coeffs_from_moments,
    moments_from_coeffs,
    spectrum_from_coeffs,
)
from .config import (
    EPS_MEASURE,
    EPS_RANK,
    STATE_AMPLITUDE_CAP,
    SWAP_AMPLITUDE_CAP,
    DimensionCapError,
)
from .locc import (
    ComponentComparison,
    LoccVerdict,
    compare_components,
    locc_verdict,
    majorizes,
)
from .measures import (
    CoefficientScheme,
    MeasureReport,
    MultipartiteReport,
    VERDICT_GENUINE,
    VERDICT_NOT_GENUINE,
    VERDICT_SEPARABLE,
    classify_pure,
    concentratable_pure,
    concurrence_pure,
    icem_component,
    icem_mean_arithmetic,
    icem_mean_geometric,
    icem_pure,
    scheme_coefficients,
)
from .roof import Ensemble, RoofConfig, RoofResult, ensemble_average, roof_minimize
from .states import (
    Bipartition,
    DensityMatrix,
    MomentVector,
    PureState,
    SchmidtSpectrum,
    partial_trace,
    random_pure_state,
    schmidt_decompose,
    trace_powers,
)
from .stateio import (
    StateFormatError,
    read_spectrum_file,
    read_state_file,
    write_state_file,
)
from .swaptest import (
    ShotSummary,
    SwapCheckReport,
    SwapTestOutcome,
    p_zero_closed_form,
    sample_outcome,
    simulate_swap_test,
    swap_check,
)
from .sweeps import ellipse_point, measure_gap, spectrum_at, sweep

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "CharCoeffs",
    "CoefficientScheme",
    "ComponentComparison",
    "DensityMatrix",
    "DimensionCapError",
    "Ensemble",
    "EPS_MEASURE",
    "EPS_RANK",
    "LoccVerdict",
    "MeasureReport",
    "MomentVector",
    "MultipartiteReport",
    "PureState",
    "RoofConfig",
    "RoofResult",
    "SchmidtSpectrum",
    "ShotSummary",
    "STATE_AMPLITUDE_CAP",
    "StateFormatError",
    "SWAP_AMPLITUDE_CAP",
    "SwapCheckReport",
    "SwapTestOutcome",
    "VERDICT_GENUINE",
    "VERDICT_NOT_GENUINE",
    "VERDICT_SEPARABLE",
    "classify_pure",
    "coeffs_from_moments",
    "compare_components",
    "concentratable_pure",
    "concurrence_pure",
    "ellipse_point",
    "ensemble_average",
    "icem_component",
    "icem_mean_arithmetic",
    "icem_mean_geometric",
    "icem_pure",
    "locc_verdict",
    "majorizes",
    "measure_gap",
    "moments_from_coeffs",
    "p_zero_closed_form",
    "partial_trace",
    "random_pure_state",
    "read_spectrum_file",
    "read_state_file",
    "roof_minimize",
    "sample_outcome",
    "scheme_coefficients",
    "schmidt_decompose",
    "simulate_swap_test",
    "spectrum_at",
    "spectrum_from_coeffs",
    "swap_check",
    "sweep",
    "trace_powers",
    "write_state_file",
]
