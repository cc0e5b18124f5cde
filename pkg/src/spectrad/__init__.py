"""Spectral radius estimation on dense complex matrices.

Exact eigenvalue oracle, Aluthge-iterate and power-sequence estimators,
numerical radius machinery, similarity-orbit minimization, and normaloid
classification.  Hot kernels run in a compiled extension when available
(``kernel_backend()`` reports which backend is live).
"""

from . import errors
from ._kernels import backend_name as kernel_backend
from .aluthge import (
    AluthgeConfig,
    IterateTrace,
    PolarFactors,
    aluthge,
    aluthge_iterate,
    iterate_trace,
    polar_decompose,
)
from .ensembles import EnsembleSpec, generate
from .estimators import (
    PowerSchedule,
    SpectralEstimate,
    ToleranceConfig,
    estimate_aluthge_iterate,
    estimate_aluthge_power,
    estimate_gelfand,
    estimate_numrad_power,
    rota_scaled,
)
from .matio import read_matrix, write_matrix
from .matkernel import (
    Eigendecomposition,
    eigenvalues,
    fractional_power_psd,
    hermitian_eig,
    matrix_exp_hermitian,
    operator_norm,
    spectral_radius_oracle,
)
from .normaloid import (
    CharacterizationCheck,
    NormaloidVerdict,
    normaloid_check,
    verify_characterizations,
)
from .numrange import (
    Angle,
    NumericalRadiusResult,
    fov_boundary,
    numerical_radius,
    peripheral_angle,
    real_part,
    rotated_realpart_norm,
)
from .orbitopt import (
    HermitianParams,
    OrbitObjective,
    OrbitResult,
    evaluate_objective,
    minimize_orbit,
    orbit_gap,
)

__version__ = "0.1.0"

__all__ = [
    "AluthgeConfig",
    "Angle",
    "CharacterizationCheck",
    "Eigendecomposition",
    "EnsembleSpec",
    "HermitianParams",
    "IterateTrace",
    "NormaloidVerdict",
    "NumericalRadiusResult",
    "OrbitObjective",
    "OrbitResult",
    "PolarFactors",
    "PowerSchedule",
    "SpectralEstimate",
    "ToleranceConfig",
    "aluthge",
    "aluthge_iterate",
    "eigenvalues",
    "errors",
    "estimate_aluthge_iterate",
    "estimate_aluthge_power",
    "estimate_gelfand",
    "estimate_numrad_power",
    "evaluate_objective",
    "fov_boundary",
    "fractional_power_psd",
    "generate",
    "hermitian_eig",
    "iterate_trace",
    "kernel_backend",
    "matrix_exp_hermitian",
    "minimize_orbit",
    "normaloid_check",
    "numerical_radius",
    "operator_norm",
    "orbit_gap",
    "peripheral_angle",
    "polar_decompose",
    "read_matrix",
    "real_part",
    "rota_scaled",
    "rotated_realpart_norm",
    "spectral_radius_oracle",
    "verify_characterizations",
    "write_matrix",
]
