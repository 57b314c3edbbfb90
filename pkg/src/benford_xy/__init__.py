"""Exact XY-chain observables, first-digit statistics, and the violation
pipeline that locates quantum phase transitions."""

from .errors import (
    BenfordXYError,
    ConfigurationError,
    DegenerateWindowError,
    DomainError,
    EmptyHistogramError,
    InsufficientRidgeError,
    MixedSideError,
    NoTransitionError,
    SingularFitError,
)
from .numerics import LineFit, PolyFit, integrate, linfit, polyfit
from .xy_exact import (
    ModelParams,
    correlator_g,
    diagonal_correlators,
    dispersion,
    dmz_dT,
    mz_finite,
    mz_infinite,
)
from .firstdigit import (
    DigitHistogram,
    ReferenceDistribution,
    expected_counts,
    first_significant_digit,
    histogram,
    probabilities,
    rescale_unit,
)
from .violation import Metric, violation
from .windowscan import Observable, ScanConfig, ScanResult, scan
from .criticality import (
    CrossoverLines,
    CrossoverQuantity,
    RidgeGrid,
    ScalingFit,
    Signature,
    TransitionEstimate,
    auto_fit_range,
    crossover_lines,
    default_signature,
    locate_transition,
    scaling_exponent,
)

__version__ = "1.0.0"

__all__ = [
    "BenfordXYError",
    "ConfigurationError",
    "CrossoverLines",
    "CrossoverQuantity",
    "DegenerateWindowError",
    "DigitHistogram",
    "DomainError",
    "EmptyHistogramError",
    "InsufficientRidgeError",
    "LineFit",
    "Metric",
    "MixedSideError",
    "ModelParams",
    "NoTransitionError",
    "Observable",
    "PolyFit",
    "ReferenceDistribution",
    "RidgeGrid",
    "ScalingFit",
    "ScanConfig",
    "ScanResult",
    "Signature",
    "SingularFitError",
    "TransitionEstimate",
    "auto_fit_range",
    "correlator_g",
    "crossover_lines",
    "default_signature",
    "diagonal_correlators",
    "dispersion",
    "dmz_dT",
    "expected_counts",
    "first_significant_digit",
    "histogram",
    "integrate",
    "linfit",
    "locate_transition",
    "mz_finite",
    "mz_infinite",
    "polyfit",
    "probabilities",
    "rescale_unit",
    "scaling_exponent",
    "scan",
    "violation",
    "__version__",
]
