"""Variable-bandwidth signal spaces built from Wilson bases.

A bounded sequence b(n) truncates the frequency ladder of an orthonormal
Wilson basis generated by a compactly supported window; the resulting
space behaves like a Paley-Wiener space whose bandwidth varies along the
time axis.  The package constructs sampling sets meeting the sufficient
maximal-gap condition, reconstructs signals from nonuniform samples by
least squares or by the adaptive-weights iteration, and provides the
density functionals of the necessary sampling condition.
"""

from .window import Window, cosine_window, orthonormality_defect, sufficiency_constant
from .wilson import (
    BandwidthSeq,
    BasisSet,
    SpaceSpec,
    WilsonIndex,
    dim,
    enumerate_basis,
    eval_psi,
)
from .space import (
    KernelEvaluator,
    average_bandwidth,
    beurling_lower_density,
    kernel,
    kernel_diag_min,
    necessary_count,
)
from .sampling import (
    CellWeights,
    SamplingSet,
    SufficiencyReport,
    adaptive_weights,
    coverage,
    gen_gap_set,
    gen_rho_set,
    mu_active,
    verify_sufficiency,
)
from .linalg import pinv_solve, svd
from .recon import (
    ConvergenceError,
    SampledData,
    adaptive_weights_reconstruct,
    design_matrix,
    project_quadrature,
    reconstruct_lsq,
    synthesize,
)
from .signals import (
    BANDWIDTH_PRESETS,
    ChirpParams,
    chirp_bandwidth_model,
    full_random_signal,
    gw_chirp,
    linear_chirp,
    random_bandwidths,
    sparse_random_signal,
)
from .metrics import ErrorReport, relative_errors, spectrogram

__version__ = "0.1.0"

__all__ = [
    "Window", "cosine_window", "orthonormality_defect", "sufficiency_constant",
    "BandwidthSeq", "BasisSet", "SpaceSpec", "WilsonIndex", "dim",
    "enumerate_basis", "eval_psi",
    "KernelEvaluator", "average_bandwidth", "beurling_lower_density",
    "kernel", "kernel_diag_min", "necessary_count",
    "CellWeights", "SamplingSet", "SufficiencyReport", "adaptive_weights",
    "coverage", "gen_gap_set", "gen_rho_set", "mu_active", "verify_sufficiency",
    "pinv_solve", "svd",
    "ConvergenceError", "SampledData", "adaptive_weights_reconstruct",
    "design_matrix", "project_quadrature", "reconstruct_lsq", "synthesize",
    "BANDWIDTH_PRESETS", "ChirpParams", "chirp_bandwidth_model",
    "full_random_signal", "gw_chirp", "linear_chirp", "random_bandwidths",
    "sparse_random_signal",
    "ErrorReport", "relative_errors", "spectrogram",
    "__version__",
]
