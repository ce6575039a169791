"""Extremal copulas with a prescribed pointwise asymmetry.

Fix a point (a, b) in the open unit square and an asymmetry target c with
0 <= c <= min(a, b, 1-a, 1-b).  Among all copulas C with
C(a, b) - C(b, a) = c there is a pointwise smallest and a pointwise largest
one.  With d1 = W(a, b) + c and d2 = M(a, b) - c they are

    lower(u, v) = max(W(u, v), min(d1, u - a + d1, v - b + d1,
                                   u + v - a - b + d1))
    upper(u, v) = min(M(u, v), max(d2, u - b + d2, v - a + d2,
                                   u + v - a - b + d2))

Both are singular copulas: each spreads its mass uniformly along four line
segments of slope -1 (lower) or +1 (upper), so they are shuffles of M.  The
prescribed asymmetry is actually attained only when c <= d_star(a, b); for
larger admissible c the two formulas are still the pointwise envelope of the
(then empty) equality constraint but C(a,b) - C(b,a) = c itself fails.

The module also exposes the segment supports, the sandwich check for
candidate copulas, and the transpose / reflection identities tying the two
families together.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asymmetry import asymmetry_at, d_star
from .core import Check, CheckReport, Copula, _as_unit

__all__ = [
    "BoundParams",
    "lower_bound",
    "upper_bound",
    "Segment",
    "SegmentSupport",
    "support_of",
    "OrderingCheck",
    "check_ordering",
    "verify_relations",
]

_PARAM_TOL = 1e-12  # slack for admissibility comparisons at the boundary


@dataclass(frozen=True)
class BoundParams:
    """Admissible parameter triple (a, b, c) for the extremal copulas.

    Requires 0 < a < 1, 0 < b < 1 and 0 <= c <= min(a, b, 1-a, 1-b).
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if not (0.0 < a < 1.0 and 0.0 < b < 1.0):
            raise ValueError(f"(a, b) must lie in the open unit square, got ({a}, {b})")
        if c < -_PARAM_TOL:
            raise ValueError(f"asymmetry target must be nonnegative, got {c}")
        if c > self.admissible_max + _PARAM_TOL:
            raise ValueError(
                f"asymmetry target {c} exceeds min(a, b, 1-a, 1-b) = {self.admissible_max}"
            )

    @property
    def admissible_max(self) -> float:
        return min(self.a, self.b, 1.0 - self.a, 1.0 - self.b)

    @property
    def d1(self) -> float:
        """Common value of the lower copula on the inner plateau: W(a,b) + c."""
        return max(0.0, self.a + self.b - 1.0) + self.c

    @property
    def d2(self) -> float:
        """Common value of the upper copula on the inner plateau: M(a,b) - c."""
        return min(self.a, self.b) - self.c

    @property
    def attains_eq3(self) -> bool:
        """True when the prescribed asymmetry c is actually attained at (a, b).

        Admissibility alone allows c up to min(a, b, 1-a, 1-b); attainment
        additionally needs c <= |b - a|, i.e. c <= d_star(a, b).
        """
        return self.c <= d_star(self.a, self.b) + _PARAM_TOL


def lower_bound(p: BoundParams) -> Copula:
    """Pointwise smallest copula with asymmetry c at (a, b)."""
    a, b, d1 = p.a, p.b, p.d1

    def fn(u, v):
        plane = np.minimum(
            np.minimum(d1, u - a + d1),
            np.minimum(v - b + d1, u + v - a - b + d1),
        )
        return np.maximum(np.maximum(0.0, u + v - 1.0), plane)

    return Copula(f"lower:{a:g},{b:g},{p.c:g}", fn, "lower", p)


def upper_bound(p: BoundParams) -> Copula:
    """Pointwise largest copula with asymmetry c at (a, b)."""
    a, b, d2 = p.a, p.b, p.d2

    def fn(u, v):
        plane = np.maximum(
            np.maximum(d2, u - b + d2),
            np.maximum(v - a + d2, u + v - a - b + d2),
        )
        return np.minimum(np.minimum(u, v), plane)

    return Copula(f"upper:{a:g},{b:g},{p.c:g}", fn, "upper", p)


@dataclass(frozen=True)
class Segment:
    """One support segment: mass u_end - u_start spread along v = alpha + beta*u."""

    u_start: float
    u_end: float
    alpha: float
    beta: float

    @property
    def mass(self) -> float:
        return self.u_end - self.u_start

    def image(self, u):
        return self.alpha + self.beta * u


@dataclass(frozen=True)
class SegmentSupport:
    """Singular support of an extremal copula: segments partitioning [0, 1] in u.

    The copula spreads mass uniformly along each segment; the projection onto
    the first coordinate is Lebesgue measure, so total mass is 1.
    """

    segments: tuple[Segment, ...]

    def __post_init__(self):
        prev = 0.0
        for s in self.segments:
            if s.u_start < prev - 1e-12 or s.u_end < s.u_start - 1e-12:
                raise ValueError("segments must be consecutive and non-overlapping")
            prev = s.u_end
        if abs(prev - 1.0) > 1e-12:
            raise ValueError("segments must partition [0, 1]")

    @property
    def total_mass(self) -> float:
        return sum(s.mass for s in self.segments)

    def cdf(self, u, v):
        """Cumulative function rebuilt from the segment mass.

        C(u, v) = integral over x in [0, u] of 1[image(x) <= v] dx, computed
        per segment by interval arithmetic (each image is affine with slope
        +-1, so the indicator cuts one subinterval).
        """
        uu = _as_unit(u, "u")
        vv = _as_unit(v, "v")
        uu, vv = np.broadcast_arrays(uu, vv)
        total = np.zeros(uu.shape)
        for s in self.segments:
            hi = np.minimum(uu, s.u_end)
            if s.beta >= 0:
                # alpha + x <= v  <=>  x <= v - alpha
                hi = np.minimum(hi, vv - s.alpha)
                lo = s.u_start
            else:
                # alpha - x <= v  <=>  x >= alpha - v
                lo = np.maximum(s.u_start, s.alpha - vv)
            total += np.maximum(0.0, hi - lo)
        if np.isscalar(u) and np.isscalar(v):
            return float(total)
        return total

    def write_csv(self, stream) -> None:
        stream.write("u_start,u_end,alpha,beta\n")
        for s in self.segments:
            stream.write(
                f"{s.u_start:.17g},{s.u_end:.17g},{s.alpha:.17g},{s.beta:.17g}\n"
            )

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            self.write_csv(fh)


def support_of(p: BoundParams, which: str) -> SegmentSupport:
    """Segment support of the lower ("lower") or upper ("upper") copula.

    Degenerate zero-length segments at corner parameter choices are kept so
    the partition structure is stable.
    """
    a, b = p.a, p.b
    if which == "lower":
        d1 = p.d1
        segs = (
            Segment(0.0, a - d1, 1.0, -1.0),
            Segment(a - d1, a, a + b - d1, -1.0),
            Segment(a, 1.0 - b + d1, 1.0 + d1, -1.0),
            Segment(1.0 - b + d1, 1.0, 1.0, -1.0),
        )
    elif which == "upper":
        d2 = p.d2
        segs = (
            Segment(0.0, d2, 0.0, 1.0),
            Segment(d2, b, a - d2, 1.0),
            Segment(b, a + b - d2, d2 - b, 1.0),
            Segment(a + b - d2, 1.0, 0.0, 1.0),
        )
    else:
        raise ValueError(f"which must be 'lower' or 'upper', got {which!r}")
    return SegmentSupport(segs)


@dataclass(frozen=True)
class OrderingCheck:
    """Outcome of the sandwich test lower <= C <= upper.

    The precondition (attainable c and C actually having asymmetry c at
    (a, b)) is reported separately from the raw pointwise ordering so a
    failure can be attributed.
    """

    precondition_ok: bool
    asymmetry_gap: float
    ordering_ok: bool
    below_violation: float
    above_violation: float

    @property
    def passed(self) -> bool:
        return self.precondition_ok and self.ordering_ok

    def __bool__(self) -> bool:
        return self.passed


def check_ordering(C: Copula, p: BoundParams, n: int = 201) -> OrderingCheck:
    """Test lower <= C <= upper on an n x n grid (tolerance 1e-12).

    Precondition: c <= d_star(a, b) and |C(a,b) - C(b,a) - c| <= 1e-9.
    """
    gap = abs(asymmetry_at(C, p.a, p.b) - p.c)
    precondition_ok = bool(p.attains_eq3 and gap <= 1e-9)

    x = np.linspace(0.0, 1.0, n)
    uu, vv = np.meshgrid(x, x, indexing="ij")
    g = np.asarray(C.fn(uu, vv), dtype=float)
    lo = lower_bound(p).fn(uu, vv)
    hi = upper_bound(p).fn(uu, vv)
    below = max(0.0, float((lo - g).max()))
    above = max(0.0, float((g - hi).max()))
    ordering_ok = max(below, above) <= 1e-12

    return OrderingCheck(precondition_ok, gap, ordering_ok, below, above)


def _grid_gap(c1: Copula, c2: Copula, n: int) -> float:
    x = np.linspace(0.0, 1.0, n)
    uu, vv = np.meshgrid(x, x, indexing="ij")
    return float(np.abs(np.asarray(c1.fn(uu, vv)) - np.asarray(c2.fn(uu, vv))).max())


def verify_relations(p: BoundParams, n: int = 101) -> CheckReport:
    """Verify the transpose / reflection identities linking the two families.

    On an n x n grid (tolerance 1e-13):
      * upper(a,b) equals the transpose of upper(b,a), same for lower;
      * upper(a,b) equals sigma1 of lower(1-b, a) and sigma2 of lower(b, 1-a).
    Scalar relations (tolerance 1e-15):
      * d2(a,b) = a - d1(1-b, a) = b - d1(b, 1-a).
    """
    a, b, c = p.a, p.b, p.c
    grid_tol = 1e-13
    swapped = BoundParams(b, a, c)
    refl1 = BoundParams(b, 1.0 - a, c)
    refl2 = BoundParams(1.0 - b, a, c)

    checks = [
        Check(
            "upper_transpose",
            _grid_gap(upper_bound(p), upper_bound(swapped).transpose(), n),
            grid_tol,
        ),
        Check(
            "lower_transpose",
            _grid_gap(lower_bound(p), lower_bound(swapped).transpose(), n),
            grid_tol,
        ),
        Check(
            "upper_is_sigma1_lower",
            _grid_gap(upper_bound(p), lower_bound(refl2).sigma1(), n),
            grid_tol,
        ),
        Check(
            "upper_is_sigma2_lower",
            _grid_gap(upper_bound(p), lower_bound(refl1).sigma2(), n),
            grid_tol,
        ),
        Check(
            "d_relations",
            max(
                abs(p.d2 - (a - refl2.d1)),
                abs(p.d2 - (b - refl1.d1)),
            ),
            1e-15,
        ),
    ]
    return CheckReport(tuple(checks))
