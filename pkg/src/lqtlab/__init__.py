"""Exact finite-horizon laboratory for sequences of local quadratic transforms.

The package simulates directed sequences of local quadratic transforms of a
regular local ring in exact rational arithmetic and evaluates the asymptotic
invariants attached to such a sequence: stabilized transform orders, the
order-ratio limit w, the pivot-value sum tau, the archimedean classification,
boundary-valuation pairs, almost-integral witnesses, and the rational
dependence test behind complete integral closedness.
"""

from .asymptotics import (
    DYADIC_RATIONALS,
    DependenceResult,
    SequenceAnalyzer,
    TauBoundReport,
    rational_dependence,
)
from .errors import (
    ArchimedeanSequenceError,
    BadUniformizerError,
    ConfigError,
    DimensionMismatchError,
    InvalidNormalizerError,
    LabError,
    NonArchimedeanSequenceError,
    NotDivisibleError,
    NotStabilizedError,
    ParseError,
    SequenceExhaustedError,
    SigmaOutOfRangeError,
    UndecidedEqualityError,
    UnknownFamilyError,
    ZeroElementError,
)
from .families import (
    BlockRecord,
    DirectionalSequence,
    FibonacciSequence,
    SigmaBlockSequence,
    builtin_family,
    cic3d_sequence,
    example76_block,
    example77_sequence,
    verify_block_sums,
)
from .polynomials import (
    INFINITY,
    Polynomial,
    divide_by_variable_power,
    format_polynomial,
    parse_polynomial,
    substitute,
)
from .quadratics import QuadraticIrrational, parse_sigma
from .transforms import (
    ExplicitSequence,
    Move,
    PeriodicSequence,
    TrackedElement,
    TransformSequence,
    apply_move,
    element_order_by_image,
    track,
    transform_principal,
)
from .values import (
    ARCHIMEDEAN,
    NON_ARCHIMEDEAN,
    BoundaryValue,
    Classification,
    EValue,
    ValueEstimate,
)

__all__ = [
    "ARCHIMEDEAN",
    "ArchimedeanSequenceError",
    "BadUniformizerError",
    "BlockRecord",
    "BoundaryValue",
    "Classification",
    "ConfigError",
    "DYADIC_RATIONALS",
    "DependenceResult",
    "DimensionMismatchError",
    "DirectionalSequence",
    "EValue",
    "ExplicitSequence",
    "FibonacciSequence",
    "INFINITY",
    "InvalidNormalizerError",
    "LabError",
    "Move",
    "NON_ARCHIMEDEAN",
    "NonArchimedeanSequenceError",
    "NotDivisibleError",
    "NotStabilizedError",
    "ParseError",
    "PeriodicSequence",
    "Polynomial",
    "QuadraticIrrational",
    "SequenceAnalyzer",
    "SequenceExhaustedError",
    "SigmaBlockSequence",
    "SigmaOutOfRangeError",
    "TauBoundReport",
    "TrackedElement",
    "TransformSequence",
    "UndecidedEqualityError",
    "UnknownFamilyError",
    "ValueEstimate",
    "ZeroElementError",
    "apply_move",
    "builtin_family",
    "cic3d_sequence",
    "divide_by_variable_power",
    "element_order_by_image",
    "example76_block",
    "example77_sequence",
    "format_polynomial",
    "parse_polynomial",
    "parse_sigma",
    "rational_dependence",
    "substitute",
    "track",
    "transform_principal",
    "verify_block_sums",
]

__version__ = "0.1.0"
