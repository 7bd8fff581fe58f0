"""Two-qubit X states: closed-form spectra and correlation measures, a
brute-force discord oracle, and pattern-preserving open-system dynamics."""

__version__ = "0.1.0"

from ._kernels import NUMBA_ENABLED, backend
from .core import (
    FanoParams,
    PhaseNormalized,
    PureCoefficients,
    XState,
    bell,
    bell_diagonal,
    dephase_average,
    from_fano,
    from_matrix,
    normalize_phases,
    random_pure,
    random_xstate,
    to_fano,
    validate,
    werner,
    x_limit,
)
from .dynamics import (
    Grade,
    GradedOperator,
    KrausSet,
    LindbladSpec,
    Trajectory,
    Verdict,
    apply_channel,
    check_hamiltonian,
    check_kraus,
    check_lindblad,
    esd_time,
    evolve,
    grade,
    off_pattern_norm,
    pauli_string_matrix,
    pauli_tensor,
    rk4_lindblad,
)
from .measures import (
    ApproxDiscord,
    MeasureReport,
    SchmidtSpectrum,
    approx_discord,
    concurrence,
    fef,
    geometric_discord,
    geometric_discord_fano,
    mid,
    mmm_discord,
    negativity,
    report,
    schmidt_number,
    schmidt_spectrum,
)
from .oracle import (
    CampaignStats,
    MeasurementBasis,
    OracleResult,
    approx_error_campaign,
    classical_correlation_oracle,
    conditional_entropy,
    discord_oracle,
)
from .spectral import (
    PartialTransposeResult,
    QubitState,
    SpectralDecomposition,
    eigendecompose,
    entropy,
    hermitian_eigen,
    marginals,
    partial_transpose,
    purity,
)

__all__ = [
    "NUMBA_ENABLED",
    "backend",
    "FanoParams",
    "PhaseNormalized",
    "PureCoefficients",
    "XState",
    "bell",
    "bell_diagonal",
    "dephase_average",
    "from_fano",
    "from_matrix",
    "normalize_phases",
    "random_pure",
    "random_xstate",
    "to_fano",
    "validate",
    "werner",
    "x_limit",
    "Grade",
    "GradedOperator",
    "KrausSet",
    "LindbladSpec",
    "Trajectory",
    "Verdict",
    "apply_channel",
    "check_hamiltonian",
    "check_kraus",
    "check_lindblad",
    "esd_time",
    "evolve",
    "grade",
    "off_pattern_norm",
    "pauli_string_matrix",
    "pauli_tensor",
    "rk4_lindblad",
    "ApproxDiscord",
    "MeasureReport",
    "SchmidtSpectrum",
    "approx_discord",
    "concurrence",
    "fef",
    "geometric_discord",
    "geometric_discord_fano",
    "mid",
    "mmm_discord",
    "negativity",
    "report",
    "schmidt_number",
    "schmidt_spectrum",
    "CampaignStats",
    "MeasurementBasis",
    "OracleResult",
    "approx_error_campaign",
    "classical_correlation_oracle",
    "conditional_entropy",
    "discord_oracle",
    "PartialTransposeResult",
    "QubitState",
    "SpectralDecomposition",
    "eigendecompose",
    "entropy",
    "hermitian_eigen",
    "marginals",
    "partial_transpose",
    "purity",
]
