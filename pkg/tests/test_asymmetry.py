"""Pointwise asymmetry budget d*, and the sup-asymmetry scanner."""

import numpy as np
import pytest

from copula_concord import (
    M,
    PI,
    W,
    BoundParams,
    asymmetry_at,
    d_star,
    lower_bound,
    mu_infinity,
    upper_bound,
)


class TestDStar:
    # Hand-checked: d*(u,v) = min(u, v, 1-u, 1-v, |v-u|).
    @pytest.mark.parametrize(
        "u, v, expected",
        [
            (0.5, 0.5, 0.0),
            (1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0),
            (0.2, 0.5, 0.2),
            (0.9, 0.2, 0.1),
            (0.0, 0.7, 0.0),
            (1.0, 0.4, 0.0),
        ],
    )
    def test_pinned_values(self, u, v, expected):
        assert d_star(u, v) == pytest.approx(expected, abs=1e-15)

    def test_global_cap_is_one_third(self):
        x = np.linspace(0.0, 1.0, 201)
        uu, vv = np.meshgrid(x, x, indexing="ij")
        vals = d_star(uu, vv)
        assert vals.min() >= 0.0
        assert vals.max() <= 1.0 / 3.0 + 1e-15
        # The cap is attained, at (1/3, 2/3) and (2/3, 1/3).
        assert d_star(1.0 / 3.0, 2.0 / 3.0) == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert d_star(2.0 / 3.0, 1.0 / 3.0) == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_dihedral_symmetries(self):
        x = np.linspace(0.0, 1.0, 101)
        uu, vv = np.meshgrid(x, x, indexing="ij")
        base = d_star(uu, vv)
        assert np.abs(d_star(vv, uu) - base).max() <= 1e-15
        assert np.abs(d_star(1.0 - uu, 1.0 - vv) - base).max() <= 1e-15
        assert np.abs(d_star(1.0 - vv, 1.0 - uu) - base).max() <= 1e-15


class TestAsymmetryAt:
    def test_prescribed_asymmetry_at_the_kink(self):
        p = BoundParams(0.4, 0.6, 0.1)
        assert asymmetry_at(lower_bound(p), 0.4, 0.6) == pytest.approx(0.1, abs=1e-15)
        assert asymmetry_at(upper_bound(p), 0.4, 0.6) == pytest.approx(0.1, abs=1e-15)

    def test_symmetric_copulas_have_none(self):
        for C in (W, PI, M):
            assert asymmetry_at(C, 0.3, 0.8) == 0.0


class TestMuInfinity:
    def test_symmetric_copulas_score_zero(self):
        for C in (W, PI, M):
            res = mu_infinity(C, n=64)
            assert res.value == 0.0
            assert res.sup_bound <= 4.0 * res.certified_radius

    def test_certified_radius_tracks_grid(self):
        res = mu_infinity(PI, n=128)
        assert res.certified_radius == pytest.approx(1.0 / 256.0, abs=1e-18)

    def test_maximally_asymmetric_copula(self):
        # The asymmetry cap 1/3 is reached by the extremal copula at
        # (a, b) = (1/3, 2/3) with c = 1/3.
        C = lower_bound(BoundParams(1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0))
        res = mu_infinity(C)
        assert res.value <= 1.0 / 3.0 + 1e-12
        assert abs(res.value - 1.0 / 3.0) <= 2.0 / 512.0
        assert res.sup_bound >= 1.0 / 3.0 - 1e-12
        ax, ay = res.argmax
        assert abs(ax - 1.0 / 3.0) <= 2.0 / 512.0
        assert abs(ay - 2.0 / 3.0) <= 2.0 / 512.0

    def test_scan_value_never_exceeds_prescription(self):
        for a, b, c in ((0.3, 0.55, 0.12), (0.25, 0.5, 0.2), (0.6, 0.7, 0.15)):
            p = BoundParams(a, b, c)
            res = mu_infinity(lower_bound(p), n=128)
            # Pointwise asymmetry peaks at min(c, |b - a|).
            peak = min(c, abs(b - a))
            assert res.value <= peak + 1e-12
            assert res.value >= peak - 2.0 / 128.0

    def test_sup_bound_dominates_value(self):
        res = mu_infinity(lower_bound(BoundParams(0.3, 0.55, 0.12)), n=64)
        assert res.sup_bound >= res.value
