"""Attainable ranges of concordance measures at fixed maximal asymmetry.

For an asymmetry level m in [0, 1/3] the extremal copulas with kink at
(a, b), b > a, and pointwise asymmetry m are parametrized over the triangle

    Delta_m = { (a, b) : a >= m, b - a >= m, a + b <= 1 },

with vertices R = (m, 2m), U = ((1-m)/2, (1+m)/2) and T = (m, 1-m).  On
this triangle the local parameters collapse to d1 = m and d2 = a - m, and
every concordance measure has a closed form on each extremal family.

Scanning the two families over Delta_m yields the exact attainable range
[g(m), h(m)] of each measure among copulas with maximal asymmetry m.  Both
boundary curves are piecewise polynomials in m; this module stores them
with exact rational breakpoints, inverts them (largest m compatible with a
given measure value), and cross-checks everything against the quadrature
and checkerboard oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .asymmetry import mu_infinity
from .bounds import BoundParams, lower_bound, upper_bound
from .concordance import Measure, measure, q_closed_lower
from .core import M, W, Copula, convex_combination

__all__ = [
    "TriangleDomain",
    "Piece",
    "RangeCurve",
    "range_curve",
    "range_of",
    "max_asymmetry_given",
    "kappa_on_lower",
    "kappa_on_upper",
    "ScanResult",
    "extremal_scan",
    "SweepSample",
    "SweepResult",
    "attainability_sweep",
    "high_asymmetry_threshold",
    "reflection_scan_gap",
]

_THIRD = Fraction(1, 3)


# ----------------------------------------------------------------------
# Parameter triangle
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TriangleDomain:
    """The kink-parameter triangle Delta_m (possibly degenerate at m = 1/3)."""

    m: float

    def __post_init__(self):
        if not 0.0 <= self.m <= float(_THIRD) + 1e-12:
            raise ValueError(f"asymmetry level m={self.m} outside [0, 1/3]")

    @property
    def R(self) -> tuple[float, float]:
        return (self.m, 2.0 * self.m)

    @property
    def U(self) -> tuple[float, float]:
        return ((1.0 - self.m) / 2.0, (1.0 + self.m) / 2.0)

    @property
    def T(self) -> tuple[float, float]:
        return (self.m, 1.0 - self.m)

    def contains(self, a, b, tol: float = 1e-9):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        ok = (a >= self.m - tol) & (b - a >= self.m - tol) & (a + b <= 1.0 + tol)
        return bool(ok) if ok.ndim == 0 else ok

    def grid(self, n: int):
        """Barycentric grid: arrays (a, b, i, j, k) with i+j+k = n and
        (a, b) = (i*R + j*U + k*T) / n."""
        if n < 1:
            raise ValueError("grid order must be >= 1")
        i, k = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
        keep = i + k <= n
        i = i[keep]
        k = k[keep]
        j = n - i - k
        w = np.stack([i, j, k]).astype(float) / n
        rx, ry = self.R
        ux, uy = self.U
        tx, ty = self.T
        a = w[0] * rx + w[1] * ux + w[2] * tx
        b = w[0] * ry + w[1] * uy + w[2] * ty
        return a, b, i, j, k


def _require_in_triangle(tri: TriangleDomain, a, b):
    inside = tri.contains(a, b)
    if not np.all(inside):
        raise ValueError(f"kink point outside the parameter triangle for m={tri.m}")


# ----------------------------------------------------------------------
# Closed forms of the measures on the two families over Delta_m
# ----------------------------------------------------------------------


def _qm_lower_tri(b, m):
    """Q(M, lower) on Delta_m, where it depends on b only (d1 = m)."""
    b = np.asarray(b, dtype=float)
    return np.where(
        b >= m + 0.5,
        0.0,
        np.where(
            2.0 * b >= 1.0 + m,
            (2.0 * m + 1.0 - 2.0 * b) ** 2,
            m * (2.0 + 3.0 * m - 4.0 * b),
        ),
    )


def _qw_upper_tri(a, b, m):
    """Q(W, upper) on Delta_m (d2 = a - m)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.select(
        [b <= 0.5 - m, b <= 0.5 - 0.5 * m, b <= 1.0 - a - m],
        [
            np.zeros_like(b),
            -((2.0 * b + 2.0 * m - 1.0) ** 2),
            -m * (4.0 * b + 3.0 * m - 2.0),
        ],
        default=(a - 1.0) ** 2 + (b - 1.0) ** 2 + 2.0 * (a - m) * (b + m) - 1.0,
    )


def kappa_on_lower(kind, a, b, m: float):
    """Measure value of lower(a, b, m) for kink points on Delta_m."""
    kind = Measure(kind)
    tri = TriangleDomain(m)
    _require_in_triangle(tri, a, b)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    s = a + b
    if kind is Measure.RHO:
        out = 6.0 * m * (1.0 - s + m) * (1.0 - s + 2.0 * m) - 1.0
    elif kind is Measure.TAU:
        out = 4.0 * m * (1.0 - s + m) - 1.0
    elif kind is Measure.PHI:
        out = 0.5 * (3.0 * _qm_lower_tri(b, m) - 1.0)
    elif kind is Measure.GAMMA:
        out = 4.0 * m * (1.0 - s + m) - 1.0 + _qm_lower_tri(b, m)
    elif kind is Measure.BETA:
        out = 4.0 * np.maximum(0.0, np.minimum(m, m + 0.5 - b)) - 1.0
    else:
        raise ValueError(kind)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def kappa_on_upper(kind, a, b, m: float):
    """Measure value of upper(a, b, m) for kink points on Delta_m."""
    kind = Measure(kind)
    tri = TriangleDomain(m)
    _require_in_triangle(tri, a, b)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = b - a
    if kind is Measure.RHO:
        out = 1.0 - 6.0 * m * (x + 2.0 * m) * (x + m)
    elif kind is Measure.TAU:
        out = 1.0 - 4.0 * m * (x + m)
    elif kind is Measure.PHI:
        out = 1.0 - 6.0 * m * (x + m)
    elif kind is Measure.GAMMA:
        out = 1.0 - 4.0 * m * (x + m) + _qw_upper_tri(a, b, m)
    elif kind is Measure.BETA:
        out = 4.0 * np.minimum(0.5, np.maximum(0.5 - m, 1.0 - m - b)) - 1.0
    else:
        raise ValueError(kind)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


# ----------------------------------------------------------------------
# Exact range curves
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """One polynomial piece of a range boundary, on [lo, hi] in m."""

    lo: Fraction
    hi: Fraction
    coeffs: tuple[float, ...]  # ascending powers of m

    def value(self, m: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc


def _eval_pieces(pieces: tuple[Piece, ...], m: float) -> float:
    if not 0.0 - 1e-12 <= m <= float(_THIRD) + 1e-12:
        raise ValueError(f"asymmetry level m={m} outside [0, 1/3]")
    m = min(max(m, 0.0), float(pieces[-1].hi))
    for piece in pieces:
        if m <= float(piece.hi) + 1e-15:
            return piece.value(m)
    return pieces[-1].value(m)


@dataclass(frozen=True)
class RangeCurve:
    """Exact attainable range [lower(m), upper(m)] of one measure."""

    kind: Measure
    lower_pieces: tuple[Piece, ...]
    upper_pieces: tuple[Piece, ...]

    def lower(self, m: float) -> float:
        return _eval_pieces(self.lower_pieces, m)

    def upper(self, m: float) -> float:
        return _eval_pieces(self.upper_pieces, m)

    def breakpoints(self) -> tuple[Fraction, ...]:
        cuts = {p.lo for p in self.lower_pieces + self.upper_pieces}
        cuts |= {p.hi for p in self.lower_pieces + self.upper_pieces}
        return tuple(sorted(cuts))

    def sample(self, resolution: int = 333):
        ms = np.linspace(0.0, float(_THIRD), resolution + 1)
        lows = np.array([self.lower(m) for m in ms])
        highs = np.array([self.upper(m) for m in ms])
        return ms, lows, highs

    def write_csv(self, stream, resolution: int = 333) -> None:
        ms, lows, highs = self.sample(resolution)
        stream.write("m,lower,upper\n")
        for m, lo, hi in zip(ms, lows, highs):
            stream.write(f"{m:.17g},{lo:.17g},{hi:.17g}\n")


@lru_cache(maxsize=None)
def range_curve(kind) -> RangeCurve:
    """The exact range boundaries of a measure as functions of m."""
    kind = Measure(kind)
    F = Fraction
    quarter, sixth, fifth = F(1, 4), F(1, 6), F(1, 5)
    if kind is Measure.RHO:
        lower = (Piece(F(0), _THIRD, (-1.0, 0.0, 0.0, 12.0)),)
        upper = (Piece(F(0), _THIRD, (1.0, 0.0, 0.0, -36.0)),)
    elif kind is Measure.TAU:
        lower = (Piece(F(0), _THIRD, (-1.0, 0.0, 4.0)),)
        upper = (Piece(F(0), _THIRD, (1.0, 0.0, -8.0)),)
    elif kind is Measure.PHI:
        lower = (
            Piece(F(0), quarter, (-0.5,)),
            Piece(quarter, _THIRD, (1.0, -12.0, 24.0)),
        )
        upper = (Piece(F(0), _THIRD, (1.0, 0.0, -12.0)),)
    elif kind is Measure.GAMMA:
        lower = (
            Piece(F(0), quarter, (-1.0, 0.0, 4.0)),
            Piece(quarter, _THIRD, (0.0, -8.0, 20.0)),
        )
        upper = (
            Piece(F(0), sixth, (1.0, 0.0, -8.0)),
            Piece(sixth, fifth, (0.0, 12.0, -44.0)),
            Piece(fifth, quarter, (1.0, 2.0, -19.0)),
            Piece(quarter, _THIRD, (2.0, -6.0, -3.0)),
        )
    elif kind is Measure.BETA:
        lower = (
            Piece(F(0), quarter, (-1.0,)),
            Piece(quarter, _THIRD, (-3.0, 8.0)),
        )
        upper = (
            Piece(F(0), sixth, (1.0,)),
            Piece(sixth, quarter, (3.0, -12.0)),
            Piece(quarter, _THIRD, (1.0, -4.0)),
        )
    else:
        raise ValueError(kind)
    return RangeCurve(kind, lower, upper)


def range_of(kind, m: float) -> tuple[float, float]:
    """Exact attainable range (lower, upper) of a measure at asymmetry m."""
    curve = range_curve(kind)
    return curve.lower(m), curve.upper(m)


# ----------------------------------------------------------------------
# Inverse: largest asymmetry compatible with a measure value
# ----------------------------------------------------------------------


def _cbrt(x: float) -> float:
    return float(np.cbrt(x))


def _sqrt(x: float) -> float:
    return float(np.sqrt(max(x, 0.0)))


@lru_cache(maxsize=None)
def _inverse_branches(kind: Measure):
    """Branches (kappa_lo, kappa_hi, fn) of the inverse map, in order."""
    F = Fraction
    if kind is Measure.RHO:
        return (
            (F(-1), F(-5, 9), lambda r: _cbrt((1.0 + r) / 12.0)),
            (F(-5, 9), F(-1, 3), lambda r: 1.0 / 3.0),
            (F(-1, 3), F(1), lambda r: _cbrt((1.0 - r) / 36.0)),
        )
    if kind is Measure.TAU:
        return (
            (F(-1), F(-5, 9), lambda t: _sqrt((1.0 + t) / 4.0)),
            (F(-5, 9), F(1, 9), lambda t: 1.0 / 3.0),
            (F(1, 9), F(1), lambda t: _sqrt((1.0 - t) / 8.0)),
        )
    if kind is Measure.PHI:
        return (
            (F(-1, 2), F(-1, 3), lambda f: (3.0 + _sqrt(3.0 + 6.0 * f)) / 12.0),
            (F(-1, 3), F(1), lambda f: _sqrt((1.0 - f) / 12.0)),
        )
    if kind is Measure.GAMMA:
        return (
            (F(-1), F(-3, 4), lambda g: _sqrt(g + 1.0) / 2.0),
            (F(-3, 4), F(-4, 9), lambda g: (_sqrt(5.0 * g + 4.0) + 2.0) / 10.0),
            (F(-4, 9), F(-1, 3), lambda g: 1.0 / 3.0),
            (F(-1, 3), F(5, 16), lambda g: (_sqrt(15.0 - 3.0 * g) - 3.0) / 3.0),
            (F(5, 16), F(16, 25), lambda g: (_sqrt(20.0 - 19.0 * g) + 1.0) / 19.0),
            (F(16, 25), F(7, 9), lambda g: (_sqrt(9.0 - 11.0 * g) + 3.0) / 22.0),
            (F(7, 9), F(1), lambda g: _sqrt(2.0 - 2.0 * g) / 4.0),
        )
    if kind is Measure.BETA:
        return (
            (F(-1), F(-1, 3), lambda v: (3.0 + v) / 8.0),
            (F(-1, 3), F(0), lambda v: (1.0 - v) / 4.0),
            (F(0), F(1), lambda v: (3.0 - v) / 12.0),
        )
    raise ValueError(kind)


def max_asymmetry_given(kind, kappa: float) -> float:
    """Largest maximal asymmetry a copula can have given a measure value.

    Piecewise closed-form inverse of the range boundaries; plateau
    branches return exactly 1/3.
    """
    kind = Measure(kind)
    branches = _inverse_branches(kind)
    lo_domain = float(branches[0][0])
    if not lo_domain - 1e-12 <= kappa <= 1.0 + 1e-12:
        raise ValueError(f"{kind.value} value {kappa} outside [{lo_domain}, 1]")
    kappa = min(max(kappa, lo_domain), 1.0)
    for b_lo, b_hi, fn in branches:
        if kappa <= float(b_hi) + 1e-15:
            return float(fn(max(kappa, float(b_lo))))
    return float(branches[-1][2](kappa))


# ----------------------------------------------------------------------
# Scan of the extremal families over the triangle
# ----------------------------------------------------------------------

# Declared optimizer locations on Delta_m: vertices R, U, T and edges
# RU (b - a = m), UT (a + b = 1), RT (a = m).
_TABLE_MIN = {
    Measure.RHO: "UT",
    Measure.TAU: "UT",
    Measure.PHI: "T",
    Measure.GAMMA: "T",
    Measure.BETA: "T",
}
_TABLE_MAX = {
    Measure.RHO: "RU",
    Measure.TAU: "RU",
    Measure.PHI: "RU",
    Measure.GAMMA: "R",
    Measure.BETA: "R",
}


def _location_mask(loc: str, i, j, k, n: int):
    masks = {
        "R": i == n,
        "U": j == n,
        "T": k == n,
        "RU": k == 0,
        "UT": i == 0,
        "RT": j == 0,
    }
    return masks[loc]


def describe_location(loc: str) -> str:
    return (f"point {loc}" if len(loc) == 1 else f"segment {loc}")


@dataclass(frozen=True)
class ScanResult:
    """Grid scan of one measure over both extremal families on Delta_m."""

    kind: Measure
    m: float
    n: int
    min_value: float
    max_value: float
    argmin: tuple[tuple[float, float], ...]
    argmax: tuple[tuple[float, float], ...]
    min_location: str  # declared locus of minimizers, e.g. "UT"
    max_location: str
    table_pass: bool  # declared loci attain the grid optima

    def summary(self) -> str:
        verdict = "PASS" if self.table_pass else "FAIL"
        return (
            f"min: {describe_location(self.min_location)}; "
            f"max: {describe_location(self.max_location)}; "
            f"table: {verdict}"
        )


def extremal_scan(kind, m: float, n: int = 64) -> ScanResult:
    """Scan kappa over lower(.) and upper(.) on a barycentric grid of Delta_m.

    The minimum over the lower family and the maximum over the upper family
    are located, and the declared optimizer loci are checked to attain the
    grid optima within 1e-10.  (The loci name where optima live; for some
    measures other grid points tie, so attainment rather than uniqueness is
    what is certified.)
    """
    kind = Measure(kind)
    if not 0.0 < m < float(_THIRD):
        raise ValueError(f"scan needs 0 < m < 1/3, got {m}")
    tri = TriangleDomain(m)
    a, b, i, j, k = tri.grid(n)
    lo_vals = np.asarray(kappa_on_lower(kind, a, b, m))
    up_vals = np.asarray(kappa_on_upper(kind, a, b, m))
    tol = 1e-10

    min_value = float(lo_vals.min())
    max_value = float(up_vals.max())
    argmin_mask = lo_vals <= min_value + tol
    argmax_mask = up_vals >= max_value - tol
    argmin = tuple(zip(a[argmin_mask].tolist(), b[argmin_mask].tolist()))
    argmax = tuple(zip(a[argmax_mask].tolist(), b[argmax_mask].tolist()))

    min_loc = _TABLE_MIN[kind]
    max_loc = _TABLE_MAX[kind]
    min_mask = _location_mask(min_loc, i, j, k, n)
    max_mask = _location_mask(max_loc, i, j, k, n)
    table_pass = bool(
        np.all(lo_vals[min_mask] <= min_value + tol)
        and np.all(up_vals[max_mask] >= max_value - tol)
    )
    return ScanResult(
        kind, m, n, min_value, max_value, argmin, argmax, min_loc, max_loc, table_pass
    )


# ----------------------------------------------------------------------
# Attainability sweep: every value between the boundaries occurs
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSample:
    family: str  # anchor vertex, "T" or "R"
    t: float  # mixture weight of the lower extremal copula
    kappa: float
    kappa_error: float
    mu: float


@dataclass(frozen=True)
class SweepResult:
    kind: Measure
    m: float
    lower: float
    upper: float
    samples: tuple[SweepSample, ...]
    max_gap: float
    gap_tolerance: float
    endpoints_ok: bool
    in_range_ok: bool
    mu_ok: bool
    mu_tolerance: float

    @property
    def passed(self) -> bool:
        return (
            self.endpoints_ok
            and self.in_range_ok
            and self.mu_ok
            and self.max_gap <= self.gap_tolerance
        )


def _sweep_anchors(m: float) -> tuple[tuple[str, Copula, Copula], ...]:
    """Mixture families for the sweep, anchored at triangle vertices.

    At each anchor the lower extremal copula attains values down to g(m)
    at T and the upper one up to h(m) at R; convex mixtures t*lower +
    (1-t)*upper interpolate while keeping maximal asymmetry exactly m.
    At m = 0 both anchors degenerate and W, M take their places.
    """
    if m == 0.0:
        return (("T", W, M), ("R", W, M))
    pT = BoundParams(m, 1.0 - m, m)
    pR = BoundParams(m, min(2.0 * m, 1.0 - m), m)
    return (
        ("T", lower_bound(pT), upper_bound(pT)),
        ("R", lower_bound(pR), upper_bound(pR)),
    )


def attainability_sweep(
    kind,
    m: float,
    steps: int = 50,
    oracle_n: int = 256,
    mu_n: int = 512,
) -> SweepResult:
    """Certify that every value in [g(m), h(m)] is attained at asymmetry m.

    Two one-parameter mixture families are swept (anchored at the vertices
    T and R of Delta_m, where the boundary values g(m) and h(m) live).  For
    each sample the measure is evaluated through the checkerboard oracle
    and the maximal asymmetry through the grid scanner.  The union of
    sampled measure values must cover [g(m), h(m)] with gaps at most
    2 (h - g) / steps plus oracle slack, the family endpoints must hit the
    boundary values, and every mu estimate must stay within 2/mu_n of m.
    """
    kind = Measure(kind)
    if not 0.0 <= m <= float(_THIRD) + 1e-12:
        raise ValueError(f"asymmetry level m={m} outside [0, 1/3]")
    g, h = range_of(kind, m)
    ts = np.linspace(0.0, 1.0, steps + 1)
    mu_tol = 2.0 / mu_n

    samples: list[SweepSample] = []
    max_err = 0.0
    mu_ok = True
    for family, low_c, up_c in _sweep_anchors(m):
        for t in ts:
            if t == 0.0:
                mix = up_c
            elif t == 1.0:
                mix = low_c
            else:
                mix = convex_combination(float(t), low_c, up_c)
            res = measure(kind, mix, mode="checkerboard", n=oracle_n)
            mu = mu_infinity(mix, mu_n).value
            if abs(mu - m) > mu_tol:
                mu_ok = False
            samples.append(SweepSample(family, float(t), res.value, res.error_bound, mu))
            max_err = max(max_err, res.error_bound)

    slack = max_err + 1e-12
    in_range_ok = all(g - s.kappa_error - 1e-12 <= s.kappa <= h + s.kappa_error + 1e-12
                      for s in samples)
    end_low = min(s.kappa for s in samples if s.family == "T" and s.t == 1.0)
    end_high = max(s.kappa for s in samples if s.family == "R" and s.t == 0.0)
    endpoints_ok = abs(end_low - g) <= slack and abs(end_high - h) <= slack

    values = sorted([g, h] + [min(max(s.kappa, g), h) for s in samples])
    max_gap = max(
        (values[i + 1] - values[i] for i in range(len(values) - 1)), default=0.0
    )
    gap_tol = 2.0 * (h - g) / max(steps, 1) + 2.0 * slack
    return SweepResult(
        kind, m, g, h, tuple(samples), max_gap, gap_tol,
        endpoints_ok, in_range_ok, mu_ok, mu_tol,
    )


# ----------------------------------------------------------------------
# Negativity thresholds and the reflection identity
# ----------------------------------------------------------------------


def high_asymmetry_threshold(kind) -> float | None:
    """Smallest asymmetry level delta such that the measure is negative for
    every copula with maximal asymmetry above delta; None when the upper
    boundary stays positive on all of [0, 1/3] (Kendall tau)."""
    kind = Measure(kind)
    if kind is Measure.RHO:
        return float(np.cbrt(1.0 / 36.0))
    if kind is Measure.PHI:
        return float(np.sqrt(1.0 / 12.0))
    if kind is Measure.TAU:
        return None
    curve = range_curve(kind)
    hi = float(_THIRD)
    if curve.upper(hi) >= 0.0:
        return None
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if curve.upper(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _kappa_lower_general(kind: Measure, a: float, b: float, c: float) -> float:
    """Measure of lower(a, b, c) from the general closed forms (no triangle
    restriction; needed for reflected kink points)."""
    p = BoundParams(a, b, c)
    if kind is Measure.BETA:
        return measure(Measure.BETA, lower_bound(p)).value
    if kind is Measure.TAU:
        return q_closed_lower("self", p).value
    if kind is Measure.RHO:
        return 3.0 * q_closed_lower("pi", p).value
    if kind is Measure.GAMMA:
        return q_closed_lower("m", p).value + q_closed_lower("w", p).value
    if kind is Measure.PHI:
        return 0.5 * (3.0 * q_closed_lower("m", p).value - 1.0)
    raise ValueError(kind)


def reflection_scan_gap(kind, m: float, n: int = 64) -> float:
    """Largest pointwise gap in the reflection identity

        kappa(upper(a, b, m)) = -kappa(lower(a, 1-b, m))

    over a grid of Delta_m.  Holds for rho, tau, gamma, beta; phi is not
    invariant under reflections and is rejected."""
    kind = Measure(kind)
    if kind is Measure.PHI:
        raise ValueError("the reflection identity does not apply to phi")
    if not 0.0 < m < float(_THIRD):
        raise ValueError(f"need 0 < m < 1/3, got {m}")
    tri = TriangleDomain(m)
    a, b, *_ = tri.grid(n)
    lhs = np.asarray(kappa_on_upper(kind, a, b, m))
    rhs = np.array(
        [-_kappa_lower_general(kind, ai, 1.0 - bi, m) for ai, bi in zip(a, b)]
    )
    return float(np.abs(lhs - rhs).max())
