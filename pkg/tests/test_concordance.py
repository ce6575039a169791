"""Concordance function Q: closed forms, segment quadrature, checkerboards."""

import numpy as np
import pytest

from copula_concord import (
    M,
    PI,
    W,
    BoundParams,
    Measure,
    UnsupportedModeError,
    lower_bound,
    measure,
    q_checkerboard,
    q_closed_lower,
    q_closed_upper,
    q_segments,
    support_of,
    to_checkerboard,
    upper_bound,
    verify_prop43,
    verify_q_properties,
)
from copula_concord.concordance import (
    classify_lower_m_case,
    classify_upper_w_case,
    eval_lower_m_case,
    eval_upper_w_case,
    matching_lower_m_cases,
    matching_upper_w_cases,
)

P = BoundParams(0.4, 0.6, 0.1)

# Q values of the reference pairs: rows W, Pi, M against columns W, Pi, M.
REFERENCE_Q = {
    ("w", "w"): -1.0,
    ("w", "pi"): -1.0 / 3.0,
    ("w", "m"): 0.0,
    ("pi", "pi"): 0.0,
    ("pi", "m"): 1.0 / 3.0,
    ("m", "m"): 1.0,
}


class TestCheckerboardOracle:
    @pytest.mark.parametrize("pair", sorted(REFERENCE_Q))
    def test_reference_pairs(self, pair):
        handles = {"w": W, "pi": PI, "m": M}
        c1, c2 = pair
        res = q_checkerboard(to_checkerboard(handles[c1], 64), handles[c2])
        assert res.error_bound == pytest.approx(8.0 / 64.0, abs=1e-15)
        assert abs(res.value - REFERENCE_Q[pair]) <= res.error_bound

    def test_error_shrinks_with_order(self):
        coarse = q_checkerboard(to_checkerboard(lower_bound(P), 32), PI)
        fine = q_checkerboard(to_checkerboard(lower_bound(P), 256), PI)
        exact = q_closed_lower("pi", P).value
        assert abs(fine.value - exact) < abs(coarse.value - exact)
        assert abs(fine.value - exact) <= fine.error_bound

    def test_mode_label_carries_order(self):
        res = q_checkerboard(to_checkerboard(PI, 16), M)
        assert res.mode == "checkerboard(16)"
        assert res.n == 16


class TestClosedForms:
    # Frozen by rational arithmetic: d1 = 1/10, d2 = 3/10 for (0.4, 0.6, 0.1).
    @pytest.mark.parametrize(
        "d_kind, expected",
        [("w", -0.96), ("pi", -247.0 / 750.0), ("m", 0.0), ("self", -0.96)],
    )
    def test_lower_pinned(self, d_kind, expected):
        res = q_closed_lower(d_kind, P)
        assert res.value == pytest.approx(expected, abs=1e-14)
        assert res.mode == "closed_form"
        assert res.error_bound == 0.0

    @pytest.mark.parametrize(
        "d_kind, expected",
        [("w", -0.06), ("pi", 116.0 / 375.0), ("m", 22.0 / 25.0), ("self", 22.0 / 25.0)],
    )
    def test_upper_pinned(self, d_kind, expected):
        assert q_closed_upper(d_kind, P).value == pytest.approx(expected, abs=1e-14)

    def test_unknown_d_kind_rejected(self):
        with pytest.raises(ValueError):
            q_closed_lower("q", P)

    @pytest.mark.parametrize(
        "p",
        [P, BoundParams(0.3, 0.58, 0.1), BoundParams(0.55, 0.8, 0.2),
         BoundParams(0.5, 0.5, 0.3), BoundParams(0.7, 0.2, 0.1)],
        ids=lambda p: f"{p.a}-{p.b}-{p.c}",
    )
    def test_closed_matches_segment_quadrature(self, p):
        for d_kind, D in (("w", W), ("pi", PI), ("m", M)):
            for which, closed in (("lower", q_closed_lower), ("upper", q_closed_upper)):
                seg = q_segments(D, support_of(p, which))
                assert abs(closed(d_kind, p).value - seg.value) <= 1e-8

    def test_closed_matches_checkerboard(self):
        cb = to_checkerboard(lower_bound(P), 256)
        for d_kind, D in (("w", W), ("pi", PI), ("m", M)):
            gap = abs(q_closed_lower(d_kind, P).value - q_checkerboard(cb, D).value)
            assert gap <= 8.0 / 256.0

    def test_self_q_uses_the_copula_itself(self):
        seg = q_segments(lower_bound(P), support_of(P, "lower"))
        assert abs(q_closed_lower("self", P).value - seg.value) <= 1e-8


class TestCaseTables:
    # One parameter triple per branch, hand-placed in its open region.
    LOWER = [
        (0.2, 0.7, 0.1), (0.3, 0.58, 0.1), (0.48, 0.6, 0.1),
        (0.2, 0.5, 0.15), (0.5, 0.5, 0.3), (0.5, 0.2, 0.15),
        (0.6, 0.48, 0.1), (0.58, 0.3, 0.1), (0.7, 0.2, 0.1),
    ]
    UPPER = [
        (0.3, 0.3, 0.05), (0.45, 0.45, 0.08), (0.55, 0.35, 0.05),
        (0.35, 0.55, 0.05), (0.6, 0.6, 0.4), (0.55, 0.8, 0.2),
        (0.8, 0.55, 0.2), (0.75, 0.7, 0.25), (0.7, 0.8, 0.1),
    ]

    def test_lower_table_covers_all_nine_cases(self):
        got = [classify_lower_m_case(BoundParams(*t)) for t in self.LOWER]
        assert got == list(range(1, 10))

    def test_upper_table_covers_all_nine_cases(self):
        got = [classify_upper_w_case(BoundParams(*t)) for t in self.UPPER]
        assert got == list(range(1, 10))

    def test_adjacent_branches_agree_on_their_boundary(self):
        # (0.25, 0.6, 0.1) sits on a case boundary of the lower table.
        p = BoundParams(0.25, 0.6, 0.1)
        cases = matching_lower_m_cases(p)
        assert len(cases) >= 2
        vals = [eval_lower_m_case(p, k) for k in cases]
        assert max(vals) - min(vals) <= 1e-12

        q = BoundParams(0.4, 0.4, 0.1)
        cases = matching_upper_w_cases(q)
        assert len(cases) >= 2
        vals = [eval_upper_w_case(q, k) for k in cases]
        assert max(vals) - min(vals) <= 1e-12


class TestMeasures:
    # Values frozen from the closed forms evaluated by hand.
    @pytest.mark.parametrize(
        "kind, low_val, up_val",
        [
            ("rho", -0.988, 0.928),
            ("tau", -0.96, 0.88),
            ("phi", -0.5, 0.82),
            ("gamma", -0.96, 0.82),
            ("beta", -1.0, 0.6),
        ],
    )
    def test_pinned_example(self, kind, low_val, up_val):
        assert measure(kind, lower_bound(P)).value == pytest.approx(low_val, abs=1e-14)
        assert measure(kind, upper_bound(P)).value == pytest.approx(up_val, abs=1e-14)

    @pytest.mark.parametrize(
        "kind, w_val, pi_val, m_val",
        [
            ("rho", -1.0, 0.0, 1.0),
            ("tau", -1.0, 0.0, 1.0),
            ("phi", -0.5, 0.0, 1.0),
            ("gamma", -1.0, 0.0, 1.0),
            ("beta", -1.0, 0.0, 1.0),
        ],
    )
    def test_reference_copulas(self, kind, w_val, pi_val, m_val):
        assert measure(kind, W).value == pytest.approx(w_val, abs=1e-15)
        assert measure(kind, PI).value == pytest.approx(pi_val, abs=1e-15)
        assert measure(kind, M).value == pytest.approx(m_val, abs=1e-15)

    def test_kind_accepts_enum_and_string(self):
        assert measure(Measure.TAU, M).value == measure("tau", M).value

    def test_beta_is_always_exact(self):
        res = measure("beta", upper_bound(P), mode="checkerboard", n=8)
        assert res.value == pytest.approx(0.6, abs=1e-15)
        assert res.error_bound == 0.0

    def test_three_modes_agree_within_bounds(self):
        for kind in ("rho", "tau", "phi", "gamma"):
            closed = measure(kind, upper_bound(P), mode="closed")
            seg = measure(kind, upper_bound(P), mode="segments")
            cb = measure(kind, upper_bound(P), mode="checkerboard", n=128)
            assert abs(closed.value - seg.value) <= 1e-8
            assert abs(closed.value - cb.value) <= cb.error_bound

    def test_unsupported_modes(self):
        with pytest.raises(UnsupportedModeError):
            measure("rho", W.sigma1(), mode="closed")
        with pytest.raises(UnsupportedModeError):
            measure("rho", PI, mode="segments")
        with pytest.raises(UnsupportedModeError):
            measure("rho", PI, mode="simpson")

    def test_checkerboard_mode_covers_any_copula(self):
        mix = W.sigma1()  # structurally opaque handle, pointwise equal to M
        res = measure("tau", mix, mode="checkerboard", n=64)
        assert abs(res.value - 1.0) <= res.error_bound


class TestSegmentQuadrature:
    def test_tolerance_tightening_is_consistent(self):
        sup = support_of(P, "upper")
        loose = q_segments(PI, sup, tol=1e-6)
        tight = q_segments(PI, sup, tol=1e-12)
        assert abs(loose.value - tight.value) <= 1e-6
        assert tight.error_bound < loose.error_bound

    def test_mode_label(self):
        res = q_segments(PI, support_of(P, "lower"))
        assert res.mode == "segment_quadrature"
        assert res.error_bound > 0.0


class TestQProperties:
    def test_symmetry_survival_reflection_chain(self):
        rep = verify_q_properties(lower_bound(P), upper_bound(P), n=128)
        assert rep.passed, rep.describe()

    def test_holds_for_reference_pairs(self):
        rep = verify_q_properties(W, M, n=64)
        assert rep.passed, rep.describe()

    def test_identity_families_closed_and_quadrature(self):
        for p in (P, BoundParams(0.3, 0.55, 0.12)):
            rep = verify_prop43(p)
            assert rep.passed, rep.describe()

    def test_identity_families_for_all_reference_partners(self):
        for d_kind in ("w", "pi", "m"):
            rep = verify_prop43(P, d_kind=d_kind)
            assert rep.passed, rep.describe()
