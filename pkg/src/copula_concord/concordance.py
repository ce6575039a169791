"""The concordance function Q and the measures built from it.

For copulas C1, C2 the concordance function is

    Q(C1, C2) = 4 * integral of C2 dC1 - 1,

the difference between the probabilities of concordance and discordance of
two random vectors with these copulas.  Three evaluation modes are provided:

  * ``q_checkerboard``: brute-force oracle; C1 is discretized to an n x n
    checkerboard and C2 is evaluated at cell centers against cell masses.
  * ``q_segments``: for the singular extremal copulas, 1-d adaptive Simpson
    quadrature of C2 along the support segments of C1.
  * ``q_closed_lower`` / ``q_closed_upper``: closed forms for the extremal
    copulas against W, Pi, M and against themselves, including the two
    nine-case piecewise tables.

On top of Q sit the concordance measures: Kendall tau Q(C, C), Spearman rho
3 Q(C, Pi), Gini gamma Q(C, M) + Q(C, W), Spearman footrule
phi = (3 Q(C, M) - 1) / 2 (a weak measure, range [-1/2, 1]), and Blomqvist
beta = 4 C(1/2, 1/2) - 1 which is always evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bounds import BoundParams, SegmentSupport, lower_bound, support_of, upper_bound
from .core import (
    M,
    PI,
    W,
    Check,
    CheckReport,
    Checkerboard,
    Copula,
    _center_grid,
    to_checkerboard,
)

__all__ = [
    "Measure",
    "ConcordanceValue",
    "UnsupportedModeError",
    "q_checkerboard",
    "q_segments",
    "q_closed_lower",
    "q_closed_upper",
    "classify_lower_m_case",
    "classify_upper_w_case",
    "matching_lower_m_cases",
    "matching_upper_w_cases",
    "measure",
    "verify_q_properties",
    "verify_prop43",
]


class Measure(str, Enum):
    """The five concordance measures with tracked attainable ranges."""

    RHO = "rho"
    TAU = "tau"
    PHI = "phi"
    GAMMA = "gamma"
    BETA = "beta"


@dataclass(frozen=True)
class ConcordanceValue:
    """A Q or measure value together with its provenance and error bound."""

    value: float
    mode: str  # "closed_form" | "segment_quadrature" | "checkerboard(n)"
    error_bound: float
    n: int | None = None


class UnsupportedModeError(ValueError):
    """Raised when an evaluation mode cannot handle the given copula."""


# ----------------------------------------------------------------------
# Checkerboard oracle
# ----------------------------------------------------------------------


def _integral_checkerboard(cb: Checkerboard, C2: Copula) -> float:
    """integral of C2 dC1 with C2 frozen at cell centers of the C1 grid."""
    uu, vv = _center_grid(cb.n)
    return float((cb.mass * np.asarray(C2.fn(uu, vv))).sum())


def q_checkerboard(cb: Checkerboard, C2: Copula) -> ConcordanceValue:
    """Oracle Q value: 4 * sum of mass(i,j) * C2(center(i,j)) - 1.

    The error bound 4 * L / n with L = 2 covers both freezing C2 at cell
    centers and replacing the original C1 by its checkerboard.
    """
    val = 4.0 * _integral_checkerboard(cb, C2) - 1.0
    return ConcordanceValue(val, f"checkerboard({cb.n})", 8.0 / cb.n, cb.n)


# ----------------------------------------------------------------------
# Segment quadrature
# ----------------------------------------------------------------------


def _adaptive_simpson(f, a: float, b: float, tol: float, max_depth: int = 48):
    """Adaptive Simpson quadrature of ``f`` on [a, b].

    Intervals are bisected until the Richardson error estimate fits the
    (halving) budget; all active intervals advance together so ``f`` is
    called on batched arrays.  Returns (value, error_estimate).
    """
    if b - a <= 0.0:
        return 0.0, 0.0
    xs = np.array([a, 0.5 * (a + b), b])
    ys = np.asarray(f(xs), dtype=float)
    lo = xs[:1].copy()
    hi = xs[2:].copy()
    flo, fmid, fhi = ys[:1].copy(), ys[1:2].copy(), ys[2:].copy()
    s = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    budget = np.array([tol])
    total = 0.0
    err = 0.0
    for _ in range(max_depth):
        mid = 0.5 * (lo + hi)
        xl = 0.5 * (lo + mid)
        xr = 0.5 * (mid + hi)
        fl = np.asarray(f(xl), dtype=float)
        fr = np.asarray(f(xr), dtype=float)
        h = hi - lo
        sl = h / 12.0 * (flo + 4.0 * fl + fmid)
        sr = h / 12.0 * (fmid + 4.0 * fr + fhi)
        delta = sl + sr - s
        done = np.abs(delta) <= 15.0 * budget
        if done.any():
            total += float((sl + sr + delta / 15.0)[done].sum())
            err += float(np.abs(delta[done]).sum() / 15.0)
        keep = ~done
        if not keep.any():
            return total, err
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        new_flo = np.concatenate([flo[keep], fmid[keep]])
        new_fhi = np.concatenate([fmid[keep], fhi[keep]])
        fmid = np.concatenate([fl[keep], fr[keep]])
        flo, fhi = new_flo, new_fhi
        s = np.concatenate([sl[keep], sr[keep]])
        budget = np.concatenate([budget[keep] / 2.0, budget[keep] / 2.0])
    total += float(s.sum())
    err += float(np.abs(s).sum()) * 1e-12 + tol
    return total, err


def q_segments(D: Copula, support: SegmentSupport, tol: float = 1e-10) -> ConcordanceValue:
    """Q(C, D) where C is the singular copula carried by ``support``.

    Since C spreads Lebesgue mass in u along each segment,
    integral of D dC = sum over segments of integral D(u, image(u)) du,
    evaluated by adaptive Simpson to ``tol`` per segment.
    """
    total = 0.0
    err = 0.0
    for seg in support.segments:
        if seg.mass <= 0.0:
            continue

        def integrand(x, s=seg):
            return D.fn(x, np.clip(s.image(x), 0.0, 1.0))

        val, e = _adaptive_simpson(integrand, seg.u_start, seg.u_end, tol)
        total += val
        err += max(e, tol)
    return ConcordanceValue(4.0 * total - 1.0, "segment_quadrature", 4.0 * err)


# ----------------------------------------------------------------------
# Closed forms
#
# Each piecewise case is a pair (margin, value): margin(a, b, d) is the
# smallest slack among the case's inequalities, so the case applies when
# margin >= 0.  Selection is by first matching case in the listed order;
# adjacent cases agree on their shared boundaries.
# ----------------------------------------------------------------------

# Q(M, lower(a, b, c)) with d = d1.
_M_LOWER_CASES = (
    (lambda a, b, d: b - (d + 0.5),
     lambda a, b, d: 0.0),
    (lambda a, b, d: min(b - 0.5 * (1 + d), d + 0.5 - b, b - d - a),
     lambda a, b, d: (2 * d + 1 - 2 * b) ** 2),
    (lambda a, b, d: min(b - 0.5 * (1 + d), d + 0.5 - b, a - (b - d)),
     lambda a, b, d: (a + b - 1 - d) * (3 * b - 3 * d - a - 1)),
    (lambda a, b, d: min(0.5 * (1 + d) - b, b - d - a),
     lambda a, b, d: d * (2 + 3 * d - 4 * b)),
    (lambda a, b, d: min(d - (2 * a - 1), d - (2 * b - 1), d - (a - b), d - (b - a)),
     lambda a, b, d: 2 * d * (1 + d - a - b) - (a - b) ** 2),
    (lambda a, b, d: min(0.5 * (1 + d) - a, a - d - b),
     lambda a, b, d: d * (2 + 3 * d - 4 * a)),
    (lambda a, b, d: min(a - 0.5 * (1 + d), d + 0.5 - a, b - (a - d)),
     lambda a, b, d: (a + b - 1 - d) * (3 * a - 3 * d - b - 1)),
    (lambda a, b, d: min(a - 0.5 * (1 + d), d + 0.5 - a, a - d - b),
     lambda a, b, d: (2 * d + 1 - 2 * a) ** 2),
    (lambda a, b, d: a - (d + 0.5),
     lambda a, b, d: 0.0),
)

# Q(W, upper(a, b, c)) with d = d2.
_W_UPPER_CASES = (
    (lambda a, b, d: d - (a + b - 0.5),
     lambda a, b, d: 0.0),
    (lambda a, b, d: min(d - (2 * a + b - 1), d - (a + 2 * b - 1), a + b - 0.5 - d),
     lambda a, b, d: -((2 * a + 2 * b - 2 * d - 1) ** 2)),
    (lambda a, b, d: min(d - (a + 2 * b - 1), 2 * a + b - 1 - d),
     lambda a, b, d: -(4 * a + 3 * b - 3 * d - 2) * (b - d)),
    (lambda a, b, d: min(d - (2 * a + b - 1), a + 2 * b - 1 - d),
     lambda a, b, d: -(3 * a + 4 * b - 3 * d - 2) * (a - d)),
    (lambda a, b, d: min(1 - a - d, 1 - b - d, 2 * a + b - 1 - d, a + 2 * b - 1 - d),
     lambda a, b, d: (a - 1) ** 2 + (b - 1) ** 2 + 2 * d * (a + b - d) - 1),
    (lambda a, b, d: min(d - (1 - b), 1 - a - d),
     lambda a, b, d: (a - d) * (a + 3 * d - 2)),
    (lambda a, b, d: min(d - (1 - a), 1 - b - d),
     lambda a, b, d: (b - d) * (b + 3 * d - 2)),
    (lambda a, b, d: min(d - (1 - a), d - (1 - b), 0.5 - d),
     lambda a, b, d: -((1 - 2 * d) ** 2)),
    (lambda a, b, d: d - 0.5,
     lambda a, b, d: 0.0),
)


def _select_case(cases, a: float, b: float, d: float) -> int:
    for idx, (margin, _) in enumerate(cases):
        if margin(a, b, d) >= 0.0:
            return idx
    # no exact match: accept a round-off excursion just outside a boundary
    for idx, (margin, _) in enumerate(cases):
        if margin(a, b, d) >= -1e-12:
            return idx
    raise RuntimeError(f"piecewise table has no case for (a={a}, b={b}, d={d})")


def _eval_cases(cases, a: float, b: float, d: float) -> float:
    idx = _select_case(cases, a, b, d)
    return float(cases[idx][1](a, b, d))


def _matching_cases(cases, a, b, d, slack):
    return [i for i, (margin, _) in enumerate(cases) if margin(a, b, d) >= -slack]


def classify_lower_m_case(p: BoundParams) -> int:
    """1-based index of the Q(M, lower) table case selected for ``p``."""
    return _select_case(_M_LOWER_CASES, p.a, p.b, p.d1) + 1


def classify_upper_w_case(p: BoundParams) -> int:
    """1-based index of the Q(W, upper) table case selected for ``p``."""
    return _select_case(_W_UPPER_CASES, p.a, p.b, p.d2) + 1


def matching_lower_m_cases(p: BoundParams, slack: float = 1e-9) -> list[int]:
    """All Q(M, lower) cases whose conditions hold within ``slack`` (1-based)."""
    return [i + 1 for i in _matching_cases(_M_LOWER_CASES, p.a, p.b, p.d1, slack)]


def matching_upper_w_cases(p: BoundParams, slack: float = 1e-9) -> list[int]:
    """All Q(W, upper) cases whose conditions hold within ``slack`` (1-based)."""
    return [i + 1 for i in _matching_cases(_W_UPPER_CASES, p.a, p.b, p.d2, slack)]


def eval_lower_m_case(p: BoundParams, case: int) -> float:
    """Evaluate a specific Q(M, lower) case formula (for boundary tests)."""
    return float(_M_LOWER_CASES[case - 1][1](p.a, p.b, p.d1))


def eval_upper_w_case(p: BoundParams, case: int) -> float:
    """Evaluate a specific Q(W, upper) case formula (for boundary tests)."""
    return float(_W_UPPER_CASES[case - 1][1](p.a, p.b, p.d2))


def q_closed_lower(d_kind: str, p: BoundParams) -> ConcordanceValue:
    """Closed-form Q(D, lower(a, b, c)) for D in {w, pi, m, self}."""
    a, b, d1 = p.a, p.b, p.d1
    rest = 1.0 - a - b + d1
    if d_kind in ("w", "self"):
        # Q against W and against the copula itself coincide here
        val = 4.0 * d1 * rest - 1.0
    elif d_kind == "pi":
        val = 2.0 * d1 * rest * (1.0 - a - b + 2.0 * d1) - 1.0 / 3.0
    elif d_kind == "m":
        val = _eval_cases(_M_LOWER_CASES, a, b, d1)
    else:
        raise ValueError(f"unknown integrand kind {d_kind!r}")
    return ConcordanceValue(val, "closed_form", 0.0)


def q_closed_upper(d_kind: str, p: BoundParams) -> ConcordanceValue:
    """Closed-form Q(D, upper(a, b, c)) for D in {w, pi, m, self}."""
    a, b, d2 = p.a, p.b, p.d2
    if d_kind == "w":
        val = _eval_cases(_W_UPPER_CASES, a, b, d2)
    elif d_kind == "pi":
        val = 1.0 / 3.0 - 2.0 * (a + b - 2.0 * d2) * (a - d2) * (b - d2)
    elif d_kind in ("m", "self"):
        val = 1.0 - 4.0 * (a - d2) * (b - d2)
    else:
        raise ValueError(f"unknown integrand kind {d_kind!r}")
    return ConcordanceValue(val, "closed_form", 0.0)


# Q(C1, C2) for the three reference copulas.
_Q_REF = {
    ("w", "w"): -1.0,
    ("w", "pi"): -1.0 / 3.0,
    ("w", "m"): 0.0,
    ("pi", "w"): -1.0 / 3.0,
    ("pi", "pi"): 0.0,
    ("pi", "m"): 1.0 / 3.0,
    ("m", "w"): 0.0,
    ("m", "pi"): 1.0 / 3.0,
    ("m", "m"): 1.0,
}

_REF_HANDLES = {"w": W, "pi": PI, "m": M}


def _combine(kind: Measure, q_w, q_pi, q_m, q_self):
    """Assemble a measure value from the four Q building blocks.

    Each argument is a (value, error) pair; returns the same.
    """
    if kind is Measure.TAU:
        return q_self
    if kind is Measure.RHO:
        return 3.0 * q_pi[0], 3.0 * q_pi[1]
    if kind is Measure.GAMMA:
        return q_m[0] + q_w[0], q_m[1] + q_w[1]
    if kind is Measure.PHI:
        return (3.0 * q_m[0] - 1.0) / 2.0, 1.5 * q_m[1]
    raise ValueError(kind)


def measure(kind, C: Copula, mode: str = "closed", n: int = 256) -> ConcordanceValue:
    """Evaluate a concordance measure of ``C``.

    Modes: "closed" (reference and extremal copulas only), "segments"
    (extremal copulas only), "checkerboard" (any copula, order ``n``).
    Blomqvist beta is a single point evaluation and is always exact.
    """
    kind = Measure(kind)
    if kind is Measure.BETA:
        return ConcordanceValue(4.0 * float(C(0.5, 0.5)) - 1.0, "closed_form", 0.0)

    if mode == "closed":
        fam = C.family
        if fam in _REF_HANDLES:
            parts = {d: (_Q_REF[(fam, d)], 0.0) for d in ("w", "pi", "m")}
            q_self = (_Q_REF[(fam, fam)], 0.0)
        elif fam == "lower":
            parts = {d: (q_closed_lower(d, C.params).value, 0.0) for d in ("w", "pi", "m")}
            q_self = (q_closed_lower("self", C.params).value, 0.0)
        elif fam == "upper":
            parts = {d: (q_closed_upper(d, C.params).value, 0.0) for d in ("w", "pi", "m")}
            q_self = (q_closed_upper("self", C.params).value, 0.0)
        else:
            raise UnsupportedModeError(
                f"no closed form for family {fam!r}; use mode='checkerboard'"
            )
        val, err = _combine(kind, parts["w"], parts["pi"], parts["m"], q_self)
        return ConcordanceValue(val, "closed_form", err)

    if mode == "segments":
        if C.family not in ("lower", "upper"):
            raise UnsupportedModeError(
                f"segment quadrature needs a singular extremal copula, got {C.family!r}"
            )
        support = support_of(C.params, C.family)

        def q_of(D):
            res = q_segments(D, support)
            return res.value, res.error_bound

        needed = {
            Measure.TAU: ("self",),
            Measure.RHO: ("pi",),
            Measure.GAMMA: ("m", "w"),
            Measure.PHI: ("m",),
        }[kind]
        parts = {d: (0.0, 0.0) for d in ("w", "pi", "m")}
        q_self = (0.0, 0.0)
        for d in needed:
            if d == "self":
                q_self = q_of(C)
            else:
                parts[d] = q_of(_REF_HANDLES[d])
        val, err = _combine(kind, parts["w"], parts["pi"], parts["m"], q_self)
        return ConcordanceValue(val, "segment_quadrature", err)

    if mode == "checkerboard":
        cb = to_checkerboard(C, n)

        def q_of(D):
            res = q_checkerboard(cb, D)
            return res.value, res.error_bound

        needed = {
            Measure.TAU: ("self",),
            Measure.RHO: ("pi",),
            Measure.GAMMA: ("m", "w"),
            Measure.PHI: ("m",),
        }[kind]
        parts = {d: (0.0, 0.0) for d in ("w", "pi", "m")}
        q_self = (0.0, 0.0)
        for d in needed:
            if d == "self":
                q_self = q_of(C)
            else:
                parts[d] = q_of(_REF_HANDLES[d])
        val, err = _combine(kind, parts["w"], parts["pi"], parts["m"], q_self)
        return ConcordanceValue(val, f"checkerboard({n})", err, n)

    raise UnsupportedModeError(f"unknown evaluation mode {mode!r}")


# ----------------------------------------------------------------------
# Structural properties of Q
# ----------------------------------------------------------------------


def verify_q_properties(C1: Copula, C2: Copula, n: int = 256) -> CheckReport:
    """Check the defining symmetries of Q via the checkerboard oracle.

    Within 8/n at order n:
      * symmetry Q(C1, C2) = Q(C2, C1);
      * survival invariance Q(C1, C2) = Q(survival C2, survival C1);
      * reflection sign flips Q(sigma_j C1, sigma_j C2) = -Q(C1, C2);
      * the complement identity
        integral C2 d(sigma_j C1) + integral (sigma_j C2) dC1 = 1/2.
    """
    tol = 8.0 / n
    boards: dict[int, Checkerboard] = {}

    def integral(A: Copula, B: Copula) -> float:
        key = id(A)
        if key not in boards:
            boards[key] = to_checkerboard(A, n)
        return _integral_checkerboard(boards[key], B)

    def q(A, B):
        return 4.0 * integral(A, B) - 1.0

    base = q(C1, C2)
    s1_1, s2_1 = C1.sigma1(), C1.sigma2()
    s1_2, s2_2 = C2.sigma1(), C2.sigma2()
    checks = (
        Check("q1_symmetry", abs(base - q(C2, C1)), tol),
        Check("q3_survival", abs(base - q(C2.survival(), C1.survival())), tol),
        Check("q4_sigma1", abs(q(s1_1, s1_2) + base), tol),
        Check("q4_sigma2", abs(q(s2_1, s2_2) + base), tol),
        Check("eq5_sigma1", abs(integral(s1_1, C2) + integral(C1, s1_2) - 0.5), tol),
        Check("eq5_sigma2", abs(integral(s2_1, C2) + integral(C1, s2_2) - 0.5), tol),
    )
    return CheckReport(checks)


_SIGMA_OF = {"w": "m", "m": "w", "pi": "pi"}


def verify_prop43(p: BoundParams, d_kind: str = "pi") -> CheckReport:
    """Check the six identity families tying Q values of the two extremal
    families together, both in closed form (1e-13) and by segment
    quadrature (1e-8).

    With swapped = (b, a), reflected = (1-a, 1-b) and s1p = (b, 1-a):
      1. Q(D, lower(a,b)) = Q(D, lower(b,a)) and the upper analogue;
      2. Q(D, lower(a,b)) = Q(D, lower(1-a,1-b)) and the upper analogue;
      3. Q(D, lower(a,b)) = -Q(sigma1 D, upper(b,1-a)) and the swapped form;
      4..6. the same three families for the self-integrals Q(C, C).
    """
    a, b, c = p.a, p.b, p.c
    swapped = BoundParams(b, a, c)
    reflected = BoundParams(1.0 - a, 1.0 - b, c)
    s1p = BoundParams(b, 1.0 - a, c)
    sd = _SIGMA_OF[d_kind]

    closed_pairs = (
        ("f1_lower", q_closed_lower(d_kind, p).value, q_closed_lower(d_kind, swapped).value),
        ("f1_upper", q_closed_upper(d_kind, p).value, q_closed_upper(d_kind, swapped).value),
        ("f2_lower", q_closed_lower(d_kind, p).value, q_closed_lower(d_kind, reflected).value),
        ("f2_upper", q_closed_upper(d_kind, p).value, q_closed_upper(d_kind, reflected).value),
        ("f3_lower", q_closed_lower(d_kind, p).value, -q_closed_upper(sd, s1p).value),
        ("f3_upper", q_closed_upper(d_kind, p).value, -q_closed_lower(sd, s1p).value),
        ("f4_lower", q_closed_lower("self", p).value, q_closed_lower("self", swapped).value),
        ("f4_upper", q_closed_upper("self", p).value, q_closed_upper("self", swapped).value),
        ("f5_lower", q_closed_lower("self", p).value, q_closed_lower("self", reflected).value),
        ("f5_upper", q_closed_upper("self", p).value, q_closed_upper("self", reflected).value),
        ("f6_lower", q_closed_lower("self", p).value, -q_closed_upper("self", s1p).value),
        ("f6_upper", q_closed_upper("self", p).value, -q_closed_lower("self", s1p).value),
    )

    def seg(d: str, params: BoundParams, which: str) -> float:
        support = support_of(params, which)
        if d == "self":
            handle = lower_bound(params) if which == "lower" else upper_bound(params)
        else:
            handle = _REF_HANDLES[d]
        return q_segments(handle, support).value

    segment_pairs = (
        ("f1_lower", seg(d_kind, p, "lower"), seg(d_kind, swapped, "lower")),
        ("f1_upper", seg(d_kind, p, "upper"), seg(d_kind, swapped, "upper")),
        ("f2_lower", seg(d_kind, p, "lower"), seg(d_kind, reflected, "lower")),
        ("f2_upper", seg(d_kind, p, "upper"), seg(d_kind, reflected, "upper")),
        ("f3_lower", seg(d_kind, p, "lower"), -seg(sd, s1p, "upper")),
        ("f3_upper", seg(d_kind, p, "upper"), -seg(sd, s1p, "lower")),
        ("f4_lower", seg("self", p, "lower"), seg("self", swapped, "lower")),
        ("f4_upper", seg("self", p, "upper"), seg("self", swapped, "upper")),
        ("f5_lower", seg("self", p, "lower"), seg("self", reflected, "lower")),
        ("f5_upper", seg("self", p, "upper"), seg("self", reflected, "upper")),
        ("f6_lower", seg("self", p, "lower"), -seg("self", s1p, "upper")),
        ("f6_upper", seg("self", p, "upper"), -seg("self", s1p, "lower")),
    )

    checks = [
        Check(f"{name}_closed", abs(lhs - rhs), 1e-13) for name, lhs, rhs in closed_pairs
    ] + [
        Check(f"{name}_segments", abs(lhs - rhs), 1e-8) for name, lhs, rhs in segment_pairs
    ]
    return CheckReport(tuple(checks))
