"""Attainable ranges over asymmetry levels: curves, scans, inverses."""

import io
import math
from fractions import Fraction

import numpy as np
import pytest

from copula_concord import (
    Measure,
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

KINDS = ("rho", "tau", "phi", "gamma", "beta")
THIRD = 1.0 / 3.0


class TestTriangleDomain:
    def test_vertices(self):
        tri = TriangleDomain(0.2)
        assert tri.R == pytest.approx((0.2, 0.4), abs=1e-15)
        assert tri.U == pytest.approx((0.4, 0.6), abs=1e-15)
        assert tri.T == pytest.approx((0.2, 0.8), abs=1e-15)

    def test_containment(self):
        tri = TriangleDomain(0.2)
        for pt in (tri.R, tri.U, tri.T, (0.25, 0.6)):
            assert tri.contains(*pt)
        assert not tri.contains(0.19, 0.4)
        assert not tri.contains(0.3, 0.45)
        assert not tri.contains(0.45, 0.7)

    def test_degenerate_triangle_at_cap(self):
        tri = TriangleDomain(THIRD)
        assert tri.R == pytest.approx(tri.U, abs=1e-15)
        assert tri.contains(THIRD, 2.0 * THIRD)

    def test_barycentric_grid(self):
        tri = TriangleDomain(0.2)
        a, b, i, j, k = tri.grid(8)
        assert len(a) == 45  # (n+1)(n+2)/2 lattice points
        assert np.all(i + j + k == 8)
        for x, y in zip(a, b):
            assert tri.contains(x, y, tol=1e-12)


class TestBoundaryValuesOnTriangle:
    # At the vertices T and R the general closed forms reduce to the
    # range endpoints; frozen reference values recomputed independently
    # in test_concordance via the parameter triple (m, 1-m, m).
    @pytest.mark.parametrize("kind", KINDS)
    def test_vertex_evaluations_reproduce_range(self, kind):
        for m in (0.05, 0.1, 0.2, 0.3, 0.32):
            tri = TriangleDomain(m)
            g, h = range_of(kind, m)
            assert kappa_on_lower(kind, *tri.T, m) == pytest.approx(g, abs=1e-14)
            assert kappa_on_upper(kind, *tri.R, m) == pytest.approx(h, abs=1e-14)

    def test_vectorized_evaluation(self):
        tri = TriangleDomain(0.2)
        a, b, _, _, _ = tri.grid(6)
        lo = kappa_on_lower("rho", a, b, 0.2)
        up = kappa_on_upper("rho", a, b, 0.2)
        assert lo.shape == a.shape and up.shape == a.shape
        g, h = range_of("rho", 0.2)
        assert lo.min() == pytest.approx(g, abs=1e-14)
        assert up.max() == pytest.approx(h, abs=1e-14)

    def test_points_outside_triangle_rejected(self):
        with pytest.raises(ValueError):
            kappa_on_lower("rho", 0.1, 0.4, 0.2)
        with pytest.raises(ValueError):
            kappa_on_upper("tau", 0.3, 0.45, 0.2)


class TestRangeOf:
    def test_zero_asymmetry_recovers_full_ranges(self):
        for kind in ("rho", "tau", "gamma", "beta"):
            assert range_of(kind, 0.0) == pytest.approx((-1.0, 1.0), abs=1e-15)
        assert range_of("phi", 0.0) == pytest.approx((-0.5, 1.0), abs=1e-15)

    def test_maximal_asymmetry_endpoints(self):
        expected = {
            "rho": (-5.0 / 9.0, -1.0 / 3.0),
            "tau": (-5.0 / 9.0, 1.0 / 9.0),
            "phi": (-1.0 / 3.0, -1.0 / 3.0),
            "gamma": (-4.0 / 9.0, -1.0 / 3.0),
            "beta": (-1.0 / 3.0, -1.0 / 3.0),
        }
        for kind, (g, h) in expected.items():
            got = range_of(kind, THIRD)
            assert got[0] == pytest.approx(g, abs=1e-14)
            assert got[1] == pytest.approx(h, abs=1e-14)

    # Frozen by substituting m into the piecewise polynomials by hand.
    @pytest.mark.parametrize(
        "kind, m, expected",
        [
            ("rho", 0.2, (-0.904, 0.712)),
            ("tau", 0.2, (-0.84, 0.68)),
            ("phi", 0.2, (-0.5, 0.52)),
            ("gamma", 0.2, (-0.84, 0.64)),
            ("beta", 0.2, (-1.0, 0.6)),
            ("gamma", 0.18, (-0.8704, 0.7344)),
        ],
    )
    def test_pinned_interior_values(self, kind, m, expected):
        got = range_of(kind, m)
        assert got[0] == pytest.approx(expected[0], abs=1e-14)
        assert got[1] == pytest.approx(expected[1], abs=1e-14)

    def test_level_outside_domain_rejected(self):
        for bad in (-0.01, 0.34, 1.0):
            with pytest.raises(ValueError):
                range_of("rho", bad)

    def test_kind_accepts_enum(self):
        assert range_of(Measure.TAU, 0.1) == range_of("tau", 0.1)


class TestRangeCurve:
    def test_breakpoints_of_the_most_segmented_curve(self):
        cuts = range_curve("gamma").breakpoints()
        for f in (Fraction(0), Fraction(1, 6), Fraction(1, 5), Fraction(1, 4), Fraction(1, 3)):
            assert f in cuts

    @pytest.mark.parametrize("kind", KINDS)
    def test_continuity_at_every_breakpoint(self, kind):
        curve = range_curve(kind)
        for pieces in (curve.lower_pieces, curve.upper_pieces):
            for left, right in zip(pieces, pieces[1:]):
                at = float(left.hi)
                assert left.value(at) == pytest.approx(right.value(at), abs=1e-12)

    @pytest.mark.parametrize("kind", KINDS)
    def test_boundaries_are_monotone_and_ordered(self, kind):
        curve = range_curve(kind)
        ms, lows, highs = curve.sample(200)
        assert ms[0] == 0.0 and ms[-1] == pytest.approx(THIRD, abs=1e-15)
        assert np.all(np.diff(lows) >= -1e-12)  # floor rises
        assert np.all(np.diff(highs) <= 1e-12)  # ceiling falls
        assert np.all(lows <= highs + 1e-15)

    def test_csv_emission_round_trips(self):
        curve = range_curve("rho")
        buf = io.StringIO()
        curve.write_csv(buf, resolution=50)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "m,lower,upper"
        assert len(lines) == 52
        for line in lines[1::17]:
            m, lo, hi = (float(x) for x in line.split(","))
            assert lo == curve.lower(m)  # 17 digits round-trip exactly
            assert hi == curve.upper(m)


class TestExtremalScan:
    # Locations of the optimizers over the two families.
    @pytest.mark.parametrize(
        "kind, summary",
        [
            ("rho", "min: segment UT; max: segment RU; table: PASS"),
            ("tau", "min: segment UT; max: segment RU; table: PASS"),
            ("phi", "min: point T; max: segment RU; table: PASS"),
            ("gamma", "min: point T; max: point R; table: PASS"),
            ("beta", "min: point T; max: point R; table: PASS"),
        ],
    )
    def test_summary_at_interior_level(self, kind, summary):
        res = extremal_scan(kind, 0.2, n=32)
        assert res.summary() == summary
        assert res.table_pass

    @pytest.mark.parametrize("kind", KINDS)
    def test_grid_optima_match_the_exact_range(self, kind):
        res = extremal_scan(kind, 0.25, n=40)
        g, h = range_of(kind, 0.25)
        assert res.min_value == pytest.approx(g, abs=1e-12)
        assert res.max_value == pytest.approx(h, abs=1e-12)
        assert res.argmin and res.argmax

    def test_degenerate_levels_rejected(self):
        for bad in (0.0, THIRD, 0.5):
            with pytest.raises(ValueError):
                extremal_scan("rho", bad)

    def test_location_labels(self):
        assert describe_location("T") == "point T"
        assert describe_location("RU") == "segment RU"


class TestInverse:
    # Frozen by solving the boundary polynomials by hand.
    @pytest.mark.parametrize(
        "kind, kappa, expected",
        [
            ("beta", 0.0, 0.25),
            ("beta", 1.0, 1.0 / 6.0),
            ("beta", -1.0 / 3.0, THIRD),
            ("tau", 1.0, 0.0),
            ("tau", -1.0, 0.0),
            ("gamma", -0.75, 0.25),
            ("gamma", 0.64, 0.2),
            ("phi", -0.5, 0.25),
            ("rho", 1.0, 0.0),
            ("rho", -1.0, 0.0),
        ],
    )
    def test_pinned_values(self, kind, kappa, expected):
        assert max_asymmetry_given(kind, kappa) == pytest.approx(expected, abs=1e-12)

    def test_plateau_values_are_exactly_one_third(self):
        assert max_asymmetry_given("rho", -0.5) == THIRD
        assert max_asymmetry_given("tau", 0.0) == THIRD
        assert max_asymmetry_given("gamma", -0.4) == THIRD

    @pytest.mark.parametrize("kind", KINDS)
    def test_roundtrip_through_the_upper_boundary(self, kind):
        # The ceiling h is strictly decreasing beyond any flat cap, so
        # inverting h(m) must recover m on that stretch.
        curve = range_curve(kind)
        start = 1.0 / 6.0 + 1e-3 if kind == "beta" else 1e-3
        for m in np.linspace(start, THIRD - 1e-3, 40):
            kappa = curve.upper(float(m))
            assert max_asymmetry_given(kind, kappa) == pytest.approx(m, abs=1e-10)

    def test_values_outside_attainable_interval_rejected(self):
        with pytest.raises(ValueError):
            max_asymmetry_given("rho", 1.2)
        with pytest.raises(ValueError):
            max_asymmetry_given("gamma", -2.0)
        with pytest.raises(ValueError):
            max_asymmetry_given("phi", -0.6)


class TestThresholds:
    def test_pinned_closed_forms(self):
        assert high_asymmetry_threshold("rho") == pytest.approx((1.0 / 36.0) ** (1.0 / 3.0), abs=1e-15)
        assert high_asymmetry_threshold("phi") == pytest.approx(1.0 / math.sqrt(12.0), abs=1e-15)
        assert high_asymmetry_threshold("beta") == pytest.approx(0.25, abs=1e-12)
        assert high_asymmetry_threshold("gamma") == pytest.approx((math.sqrt(15.0) - 3.0) / 3.0, abs=1e-12)

    def test_tau_stays_positive_up_to_the_cap(self):
        assert high_asymmetry_threshold("tau") is None
        assert range_of("tau", THIRD)[1] > 0.0

    @pytest.mark.parametrize("kind", ("rho", "phi", "gamma", "beta"))
    def test_threshold_is_the_sign_change_of_the_ceiling(self, kind):
        thr = high_asymmetry_threshold(kind)
        curve = range_curve(kind)
        assert curve.upper(thr - 1e-6) > 0.0
        assert curve.upper(thr + 1e-6) < 0.0


class TestAttainability:
    def test_sweep_covers_the_range(self):
        res = attainability_sweep("tau", 0.25, steps=10, oracle_n=64, mu_n=128)
        assert res.passed
        assert res.endpoints_ok and res.in_range_ok and res.mu_ok
        assert res.max_gap <= res.gap_tolerance
        assert {s.family for s in res.samples} == {"T", "R"}
        assert len(res.samples) == 2 * 11

    def test_sweep_at_zero_uses_the_frechet_anchors(self):
        res = attainability_sweep("rho", 0.0, steps=8, oracle_n=64, mu_n=64)
        assert res.passed
        assert res.lower == pytest.approx(-1.0, abs=1e-15)
        assert res.upper == pytest.approx(1.0, abs=1e-15)

    def test_invalid_level_rejected(self):
        with pytest.raises(ValueError):
            attainability_sweep("rho", 0.5)


class TestReflection:
    @pytest.mark.parametrize("kind", ("rho", "tau", "gamma", "beta"))
    def test_ceiling_is_reflected_floor(self, kind):
        # kappa(upper(a, b)) = -kappa(lower(a, 1-b)) across the triangle.
        assert reflection_scan_gap(kind, 0.15, n=16) <= 1e-12

    def test_footrule_is_excluded(self):
        # The footrule is not invariant under this reflection.
        with pytest.raises(ValueError):
            reflection_scan_gap("phi", 0.15)
