"""Extremal bivariate copulas with prescribed pointwise asymmetry.

The package builds, for every admissible kink point (a, b) and asymmetry
level c, the pointwise smallest and largest copulas whose asymmetry
C(a,b) - C(b,a) equals c; evaluates the concordance function Q against
them in closed form, by segment quadrature and by a checkerboard oracle;
and derives the exact attainable ranges of Spearman's rho, Kendall's tau,
Spearman's footrule, Gini's gamma and Blomqvist's beta as functions of the
maximal asymmetry.
"""

from .asymmetry import AsymmetryResult, asymmetry_at, d_star, mu_infinity
from .bounds import (
    BoundParams,
    OrderingCheck,
    Segment,
    SegmentSupport,
    check_ordering,
    lower_bound,
    support_of,
    upper_bound,
    verify_relations,
)
from .concordance import (
    ConcordanceValue,
    Measure,
    UnsupportedModeError,
    measure,
    q_checkerboard,
    q_closed_lower,
    q_closed_upper,
    q_segments,
    verify_prop43,
    verify_q_properties,
)
from .core import (
    M,
    PI,
    W,
    Check,
    Checkerboard,
    CheckReport,
    Copula,
    ValidationReport,
    convex_combination,
    to_checkerboard,
    validate_copula,
)
from .regions import (
    Piece,
    RangeCurve,
    ScanResult,
    SweepResult,
    TriangleDomain,
    attainability_sweep,
    describe_location,
    extremal_scan,
    high_asymmetry_threshold,
    kappa_on_lower,
    kappa_on_upper,
    max_asymmetry_given,
    range_curve,
    range_of,
    reflection_scan_gap,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetryResult",
    "BoundParams",
    "Check",
    "CheckReport",
    "Checkerboard",
    "ConcordanceValue",
    "Copula",
    "M",
    "Measure",
    "OrderingCheck",
    "PI",
    "Piece",
    "RangeCurve",
    "ScanResult",
    "Segment",
    "SegmentSupport",
    "SweepResult",
    "TriangleDomain",
    "UnsupportedModeError",
    "ValidationReport",
    "W",
    "asymmetry_at",
    "attainability_sweep",
    "check_ordering",
    "convex_combination",
    "d_star",
    "describe_location",
    "extremal_scan",
    "high_asymmetry_threshold",
    "kappa_on_lower",
    "kappa_on_upper",
    "lower_bound",
    "max_asymmetry_given",
    "measure",
    "mu_infinity",
    "q_checkerboard",
    "q_closed_lower",
    "q_closed_upper",
    "q_segments",
    "range_curve",
    "range_of",
    "reflection_scan_gap",
    "support_of",
    "to_checkerboard",
    "upper_bound",
    "validate_copula",
    "verify_prop43",
    "verify_q_properties",
    "verify_relations",
]
