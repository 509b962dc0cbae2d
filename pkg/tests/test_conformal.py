import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from leja_lab import (
    Affine,
    SetSpec,
    exact_green,
    green_eval,
    green_from_json,
    green_to_json,
    inverse_joukowski,
    joukowski,
    level_curve,
    point_to_ellipse_distance,
    rho,
    rho_formula_segment,
    rho_many,
)
from conftest import brute_ellipse_distance, hausdorff_polyline


class TestJoukowski:
    def test_forward_values(self):
        assert joukowski(2.0) == pytest.approx(1.25)
        assert abs(joukowski(1j)) == pytest.approx(0.0)
        assert joukowski(2j) == pytest.approx(0.75j)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            joukowski(0.0)

    def test_inverse_values(self):
        assert inverse_joukowski(1.25) == pytest.approx(2.0)
        assert inverse_joukowski(0.75j) == pytest.approx(2j)
        assert inverse_joukowski(-1.25) == pytest.approx(-2.0)

    def test_inverse_rejects_segment_points(self):
        for z in (0.0, 0.5, -1.0, 1.0, 0.3 + 1e-15j):
            with pytest.raises(ValueError):
                inverse_joukowski(z)

    def test_round_trip_grid(self):
        radii = np.geomspace(1.0005, 10.0, 100)
        ang = 2 * np.pi * np.arange(100) / 100
        w = radii[:, None] * np.exp(1j * ang[None, :])
        back = inverse_joukowski(joukowski(w))
        assert np.abs(back - w).max() <= 1e-12
        assert (np.abs(back) > 1.0).all()

    @given(st.floats(1.01, 50.0), st.floats(0.0, 2.0 * math.pi))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_property(self, r, theta):
        w = r * complex(math.cos(theta), math.sin(theta))
        back = complex(inverse_joukowski(joukowski(w)))
        assert abs(back - w) <= 1e-10 * max(1.0, abs(w))
        assert abs(back) > 1.0


class TestGreenEval:
    def test_segment_values(self, segment_green):
        assert green_eval(segment_green, 1.25) == pytest.approx(math.log(2.0), abs=1e-12)

    def test_circle_value(self, circle):
        g = exact_green(circle)
        assert green_eval(g, 2.0) == pytest.approx(math.log(2.0), abs=1e-14)

    def test_segment_on_level_ellipse(self, segment_green):
        theta = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        z = 1.25 * np.cos(theta) + 0.75j * np.sin(theta)
        g = green_eval(segment_green, z)
        assert np.abs(g - math.log(2.0)).max() <= 1e-12

    def test_nonnegative_and_rejects_inside(self, segment_green, circle):
        z = np.array([1.0001, 2.0, 10.0, 1e6]) * (0.3 + 1j)
        assert (green_eval(segment_green, z) >= 0).all()
        with pytest.raises(ValueError):
            green_eval(segment_green, 0.25)
        with pytest.raises(ValueError):
            green_eval(exact_green(circle), 0.5)

    def test_asymptotics(self, segment_green):
        # field ~ log|z| - log(capacity); capacity of the segment is 1/2
        err = abs(green_eval(segment_green, 1e6 + 0j) - (math.log(1e6) + math.log(2.0)))
        assert err <= 1e-5

    def test_discrete_matches_exact_away_from_set(self, discrete_green_256, segment_green):
        z = np.array([2.0 + 0j, 1j, -3.0 + 0.5j])
        d = green_eval(discrete_green_256, z)
        e = green_eval(segment_green, z)
        assert np.abs(d - e).max() <= 0.02


class TestLevelCurve:
    def test_segment_ellipse_axes(self, segment_green):
        curve = level_curve(segment_green, 1.0, 512)
        assert curve.points.real.max() == pytest.approx(1.25, abs=1e-12)
        assert curve.points.imag.max() == pytest.approx(0.75, abs=1e-12)
        assert curve.tolerance <= 1e-12

    def test_circle_level(self, circle):
        curve = level_curve(exact_green(circle), 1.0, 256)
        r = np.abs(curve.points)
        assert r.max() == pytest.approx(2.0, abs=1e-12)
        assert r.min() == pytest.approx(2.0, abs=1e-12)

    def test_residual_within_tolerance(self, segment_green):
        for delta in (0.25, 1.0, 4.0):
            curve = level_curve(segment_green, delta, 256)
            g = green_eval(segment_green, curve.points)
            assert np.abs(g - math.log1p(delta)).max() <= curve.tolerance + 1e-15

    def test_discrete_close_to_exact(self, discrete_green_256, segment_green):
        approx = level_curve(discrete_green_256, 0.5, 512)
        exact = level_curve(segment_green, 0.5, 8192)
        assert hausdorff_polyline(approx.points, exact.points) <= 0.02

    def test_discrete_curve_encloses_set(self, discrete_green_256):
        curve = level_curve(discrete_green_256, 0.5, 512)
        for z0 in (0j, -0.9 + 0j, 0.9 + 0j):
            w = curve.points - z0
            winding = np.angle(np.roll(w, -1) / w).sum() / (2 * np.pi)
            assert winding == pytest.approx(1.0, abs=1e-6)

    def test_rejects_bad_inputs(self, segment_green):
        with pytest.raises(ValueError):
            level_curve(segment_green, 0.0)
        with pytest.raises(ValueError):
            level_curve(segment_green, 11.0)
        with pytest.raises(ValueError):
            level_curve(segment_green, 1.0, 32)

    def test_unbracketed_level_reports_box_size(self, segment):
        # an absurd capacity pushes the wanted level outside any finite box
        from leja_lab.conformal import GreenModel

        charges = np.linspace(-1, 1, 32).astype(complex)
        model = GreenModel("discrete", segment, charges=charges,
                           capacity_estimate=1e6)
        with pytest.raises(RuntimeError, match="half-width"):
            level_curve(model, 0.5, 128)


class TestDiscreteClamp:
    def test_field_clamped_at_zero_near_set(self, discrete_green_256):
        z = np.linspace(-0.99, 0.99, 51).astype(complex) + 1e-6j
        g = green_eval(discrete_green_256, z)
        assert (g >= 0.0).all()


class TestRho:
    def test_exact_segment_values(self, segment_green):
        assert rho(segment_green, 1.0, 0.0) == pytest.approx(0.75, abs=1e-13)
        assert rho(segment_green, 1.0, 1.0) == pytest.approx(0.25, abs=1e-13)
        assert rho(segment_green, 1.0, -1.0) == pytest.approx(0.25, abs=1e-13)

    def test_against_brute_force(self, segment_green):
        a, b = 1.25, 0.75
        for x in (0.0, 0.3, 0.79, 0.8, 0.95, 1.0):
            expect = brute_ellipse_distance(a, b, x, 0.0, m=400_001)
            assert rho(segment_green, 1.0, x) == pytest.approx(expect, abs=1e-8)

    def test_symmetry(self, segment_green):
        xs = np.linspace(0.0, 1.0, 200)
        left = rho_many(segment_green, 0.25, -xs.astype(complex))
        right = rho_many(segment_green, 0.25, xs.astype(complex))
        assert np.abs(left - right).max() <= 1e-12

    def test_rejects_off_segment(self, segment_green):
        with pytest.raises(ValueError):
            rho(segment_green, 1.0, 0.5 + 0.5j)

    def test_scales_with_similarity(self, segment):
        aff = Affine(scale=3.0, rot_rad=0.4, shift=1 + 2j)
        moved = SetSpec("segment", affine=aff)
        g0, g1 = exact_green(segment), exact_green(moved)
        zs = np.array([0.0, 0.5, 1.0], dtype=complex)
        r0 = rho_many(g0, 0.5, zs)
        r1 = rho_many(g1, 0.5, aff.apply(zs))
        assert np.allclose(r1, 3.0 * r0, rtol=1e-12)

    def test_polyline_rho_converges_from_above(self, circle):
        g = exact_green(circle)
        z = 1.0 + 0j
        vals = [rho(g, 1.0, z, resolution=res) for res in (64, 256, 1024)]
        assert vals[0] >= vals[1] >= vals[2] >= 1.0 - 1e-12
        assert vals[2] == pytest.approx(1.0, abs=1e-4)


class TestRhoFormula:
    def test_values(self):
        assert rho_formula_segment(0.0, 1) == pytest.approx(2.0)
        assert rho_formula_segment(1.0, 1) == pytest.approx(1.0)
        assert rho_formula_segment(0.0, 10) == pytest.approx(0.11)

    def test_rejects_outside(self):
        with pytest.raises(ValueError):
            rho_formula_segment(1.5, 4)

    def test_two_sided_comparison_small_sweep(self, segment_green):
        # the sweep over the full range runs in the acceptance suite
        xs = np.linspace(-1.0, 1.0, 501)
        ratios = []
        for n in (1, 2, 8, 32, 128):
            f = rho_formula_segment(xs, n)
            e = rho_many(segment_green, 1.0 / n, xs.astype(complex))
            ratios.append(f / e)
        r = np.concatenate(ratios)
        c2 = max(r.max(), 1.0 / r.min())
        assert c2 <= 4.5

    @given(st.floats(-1.0, 1.0), st.integers(1, 512))
    def test_positive(self, x, n):
        assert rho_formula_segment(x, n) > 0.0


class TestPointToEllipse:
    def test_off_axis_against_brute(self):
        rng = np.random.default_rng(11)
        for _ in range(12):
            a = rng.uniform(1.0, 3.0)
            b = rng.uniform(0.2, 1.0) * a
            p = rng.uniform(-1.5 * a, 1.5 * a)
            q = rng.uniform(-1.5 * a, 1.5 * a)
            want = brute_ellipse_distance(a, b, p, q)
            assert point_to_ellipse_distance(a, b, p, q) == pytest.approx(want, abs=1e-8)

    def test_circle_degenerate(self):
        assert point_to_ellipse_distance(2.0, 2.0, 5.0, 0.0) == pytest.approx(3.0)

    def test_rejects_bad_axes(self):
        with pytest.raises(ValueError):
            point_to_ellipse_distance(1.0, 2.0, 0.0, 0.0)


class TestSerialization:
    def test_exact_round_trip(self, segment_green):
        doc = green_to_json(segment_green)
        again = green_from_json(doc)
        assert again.method == "exact_segment"
        assert green_eval(again, 1.25) == pytest.approx(math.log(2.0), abs=1e-12)

    def test_discrete_round_trip(self, discrete_green_256):
        doc = green_to_json(discrete_green_256)
        again = green_from_json(doc)
        z = 2.0 + 1j
        assert green_eval(again, z) == pytest.approx(green_eval(discrete_green_256, z))
        assert again.capacity_estimate == discrete_green_256.capacity_estimate
