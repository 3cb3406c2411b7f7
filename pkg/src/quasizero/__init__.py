"""Zeros and lower bounds of the quasipolynomial e^lambda + a*lambda^k.

The package evaluates the function stably in the exponent domain, splits the
plane into four named regions around the zero curve, enumerates the zero
chain from asymptotic guesses certified by two independent refiners plus an
argument-principle count, and verifies the dominance bounds by seeded
sampling.
"""

from .bounds import (
    BoundReport,
    QuadrangleGeom,
    estimate_c_delta,
    quadrangle,
    verify_eq3,
    verify_eq4,
)
from .core import (
    EXP_SATURATION,
    Quasipolynomial,
    RatioValue,
    eval_f,
    eval_fprime,
    ratio_alg,
    ratio_exp,
    relative_magnitude,
    sigma,
)
from .errors import (
    BoundaryZeroError,
    CertificationError,
    DegenerateZeroError,
    DeltaTooLargeError,
    DepthExceededError,
    DerivativeVanishedError,
    DivergedError,
    DuplicateZeroError,
    EmptyRegionError,
    EmptySampleError,
    EvalOverflowError,
    InvalidIndexError,
    InvalidQueryError,
    NoSolutionError,
    NonConsecutiveError,
    NotConvergedError,
    QuasizeroError,
    WindingError,
    ZeroArgumentError,
)
from .oracle import (
    ContourCount,
    Disk,
    Rect,
    count_zeros_disk,
    count_zeros_rect,
    isolate_zeros,
)
from .regions import (
    RegionKind,
    RegionLabel,
    RegionQuery,
    classify,
    gamma_abscissa,
    gamma_polyline,
    half_plane,
    min_h_t1,
    min_h_t2,
    sector_radius,
)
from .zeros import (
    SpacingGap,
    SpacingReport,
    ZeroRecord,
    asymptotic_guess,
    enumerate_zeros,
    fixedpoint_refine,
    newton_refine,
    nu_min,
    small_zeros,
    spacing_report,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BoundaryZeroError",
    "CertificationError",
    "ContourCount",
    "DegenerateZeroError",
    "DeltaTooLargeError",
    "DepthExceededError",
    "DerivativeVanishedError",
    "Disk",
    "DivergedError",
    "DuplicateZeroError",
    "EXP_SATURATION",
    "EmptyRegionError",
    "EmptySampleError",
    "EvalOverflowError",
    "InvalidIndexError",
    "InvalidQueryError",
    "NoSolutionError",
    "NonConsecutiveError",
    "NotConvergedError",
    "QuadrangleGeom",
    "Quasipolynomial",
    "QuasizeroError",
    "RatioValue",
    "Rect",
    "RegionKind",
    "RegionLabel",
    "RegionQuery",
    "SpacingGap",
    "SpacingReport",
    "WindingError",
    "ZeroArgumentError",
    "ZeroRecord",
    "asymptotic_guess",
    "classify",
    "count_zeros_disk",
    "count_zeros_rect",
    "enumerate_zeros",
    "estimate_c_delta",
    "eval_f",
    "eval_fprime",
    "fixedpoint_refine",
    "gamma_abscissa",
    "gamma_polyline",
    "half_plane",
    "isolate_zeros",
    "min_h_t1",
    "min_h_t2",
    "newton_refine",
    "nu_min",
    "quadrangle",
    "ratio_alg",
    "ratio_exp",
    "relative_magnitude",
    "sector_radius",
    "sigma",
    "small_zeros",
    "spacing_report",
    "verify_eq3",
    "verify_eq4",
    "__version__",
]
