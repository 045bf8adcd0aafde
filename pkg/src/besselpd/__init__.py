"""Bessel-type special functions, Fourier-Bessel transforms and numerical
checks of positive definiteness and complete monotonicity."""

__version__ = "0.1.0"

from .bessel_transform import (
    KernelParams,
    WeightedFunction,
    c_alpha,
    convolve,
    fourier_bessel,
    gauss_kernel,
    poisson_kernel,
    translate,
    weighted_lp_norm,
)
from .definiteness import Verdict, certify_spd, gram_matrix, sample_nodes
from .exceptions import (
    BesselPDError,
    BracketError,
    ConfigurationError,
    DivergenceError,
    DomainError,
    EvaluationError,
)
from .monotonicity import Outcome, cm_check, lcm_check, log_convexity_check
from .quadrature import (
    differentiate,
    find_root,
    integrate_finite,
    integrate_oscillatory,
    integrate_semi_infinite,
)
from .special_fns import (
    bessel_j,
    bessel_modulus_sq,
    bessel_y,
    kummer_1f1,
    modified_i,
    modified_k,
    normalized_j,
    scaled_k,
)
from .verification import REGISTRY, ScenarioConfig, ScenarioReport, run_scenarios

__all__ = [
    "__version__",
    "BesselPDError",
    "BracketError",
    "ConfigurationError",
    "DivergenceError",
    "DomainError",
    "EvaluationError",
    "KernelParams",
    "WeightedFunction",
    "c_alpha",
    "convolve",
    "fourier_bessel",
    "gauss_kernel",
    "poisson_kernel",
    "translate",
    "weighted_lp_norm",
    "Verdict",
    "certify_spd",
    "gram_matrix",
    "sample_nodes",
    "Outcome",
    "cm_check",
    "lcm_check",
    "log_convexity_check",
    "differentiate",
    "find_root",
    "integrate_finite",
    "integrate_oscillatory",
    "integrate_semi_infinite",
    "bessel_j",
    "bessel_modulus_sq",
    "bessel_y",
    "kummer_1f1",
    "modified_i",
    "modified_k",
    "normalized_j",
    "scaled_k",
    "REGISTRY",
    "ScenarioConfig",
    "ScenarioReport",
    "run_scenarios",
]
