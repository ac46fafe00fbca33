import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from dunkl_lab._specfun import (
    ball_volume,
    check_quad_error,
    circle_arc_rule,
    gamma_fn,
    gauss_jacobi_rule,
    halfline_gaussian_rule,
    jacobi_on_interval,
    normalized_bessel,
    quad_with_breakpoints,
    sphere_area,
    sphere_rule,
)
from dunkl_lab.base import AccuracyError, DomainError, DomainTag, UnsupportedDimensionError


class TestGamma:
    def test_values(self):
        np.testing.assert_allclose(gamma_fn([0.5, 1.0, 5.0]), [np.sqrt(np.pi), 1.0, 24.0], rtol=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            gamma_fn(0.0)

    def test_sphere_and_ball(self):
        np.testing.assert_allclose([sphere_area(1), sphere_area(2), sphere_area(3)], [2.0, 2 * np.pi, 4 * np.pi])
        np.testing.assert_allclose(ball_volume(3, 2.0), 32 * np.pi / 3)


class TestNormalizedBessel:
    def test_closed_forms(self):
        z = np.array([0.3, 2.0, 7.5, 12.0, 40.0])
        np.testing.assert_allclose(normalized_bessel(-0.5, z).real, np.cos(z), rtol=1e-11, atol=1e-14)
        np.testing.assert_allclose(normalized_bessel(0.5, z).real, np.sin(z) / z, rtol=1e-11, atol=1e-15)

    def test_sin_anchor(self):
        assert abs(normalized_bessel(0.5, 2.0) - np.sin(2.0) / 2) < 1e-14

    def test_origin(self):
        assert normalized_bessel(1.7, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_imaginary_axis(self):
        # j_{1/2}(ix) = sinh(x) / x
        x = np.linspace(0.1, 6.0, 7)
        np.testing.assert_allclose(normalized_bessel(0.5, 1j * x), np.sinh(x) / x, rtol=1e-12)

    def test_series_and_scipy_meet(self):
        alpha = np.array([0.0, 0.5, 1.25, 2.5])
        below = normalized_bessel(alpha, 8.0 - 1e-9, series_cutoff=8.0)
        above = normalized_bessel(alpha, 8.0 + 1e-9, series_cutoff=8.0)
        np.testing.assert_allclose(below, above, rtol=1e-8, atol=1e-12)

    @given(st.floats(min_value=-20, max_value=20, allow_nan=False), st.floats(min_value=-0.5, max_value=3.0))
    @settings(max_examples=100, deadline=None)
    def test_even(self, z, alpha):
        np.testing.assert_allclose(normalized_bessel(alpha, z), normalized_bessel(alpha, -z), rtol=1e-12, atol=1e-14)

    def test_matches_scipy(self):
        alpha, z = 1.5, np.array([1.0, 3.0, 5.0])
        expected = special.gamma(alpha + 1) * (z / 2) ** (-alpha) * special.jv(alpha, z)
        np.testing.assert_allclose(normalized_bessel(alpha, z).real, expected, rtol=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            normalized_bessel(-0.75, 1.0)
        with pytest.raises(DomainError):
            normalized_bessel(0.5, np.inf)


class TestGaussJacobi:
    def test_beta_mass(self):
        gamma = 1.5
        rule = gauss_jacobi_rule(20, gamma - 1, gamma)
        assert rule.mass == pytest.approx(np.pi / 2, rel=1e-13)
        assert rule.mass == pytest.approx(2 ** (2 * gamma) * special.beta(gamma, gamma + 1), rel=1e-13)

    def test_moments(self):
        rule = gauss_jacobi_rule(10, 0.5, 1.0)
        mean = rule.integrate(lambda t: t) / rule.mass
        assert mean == pytest.approx((1.0 - 0.5) / (0.5 + 1.0 + 2), rel=1e-13)
        assert rule.mass == pytest.approx(2 ** 2.5 * special.beta(1.5, 2.0), rel=1e-13)

    def test_shifted_interval(self):
        x, w = jacobi_on_interval(16, 1.0, 3.0, 0.0, 2.0)
        # ∫_1^3 (x-1)^2 dx
        assert np.sum(w) == pytest.approx(8 / 3, rel=1e-13)
        assert np.all((x > 1) & (x < 3))

    def test_vectorized_intervals(self):
        x, w = jacobi_on_interval(8, np.zeros(3), np.array([1.0, 2.0, 3.0]), 0.0, 0.0)
        assert x.shape == (3, 8)
        np.testing.assert_allclose(w.sum(axis=-1), [1.0, 2.0, 3.0])

    def test_rejects_bad_exponents(self):
        with pytest.raises(DomainError):
            gauss_jacobi_rule(4, -1.0, 0.0)
        with pytest.raises(DomainError):
            gauss_jacobi_rule(0, 0.0, 0.0)


class TestHalfline:
    @pytest.mark.parametrize("p", [0.0, 1.0, 2.5, 4.0])
    def test_moments(self, p):
        rule = halfline_gaussian_rule(8, p)
        assert rule.domain_tag is DomainTag.radial_halfline
        assert rule.mass == pytest.approx(special.gamma((p + 1) / 2) / 2, rel=1e-12)
        assert rule.integrate(lambda r: r**2) == pytest.approx(special.gamma((p + 3) / 2) / 2, rel=1e-12)

    def test_rejects_bad_exponent(self):
        with pytest.raises(DomainError):
            halfline_gaussian_rule(4, -1.0)
        with pytest.raises(DomainError):
            halfline_gaussian_rule(0, 1.0)


class TestSphereRules:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_area(self, d):
        assert sphere_rule(d, 16).mass == pytest.approx(sphere_area(d), rel=1e-12)

    def test_second_moment(self):
        rule = sphere_rule(3, 12)
        assert rule.integrate(lambda p: p[:, 2] ** 2) == pytest.approx(4 * np.pi / 3, rel=1e-12)
        np.testing.assert_allclose(np.linalg.norm(rule.nodes, axis=1), 1.0)

    def test_unsupported(self):
        with pytest.raises(UnsupportedDimensionError):
            sphere_rule(4, 8)

    def test_arc_rule_with_walls(self):
        # ∫_0^{2π} |cos θ|^2 |sin θ|^2 dθ = π/4
        theta, w = circle_arc_rule(
            12, [0.0, np.pi / 2, np.pi, 3 * np.pi / 2], [2.0, 2.0, 2.0, 2.0], lambda t: (np.cos(t) * np.sin(t)) ** 2
        )
        assert np.sum(w) == pytest.approx(np.pi / 4, rel=1e-12)
        assert theta.shape == w.shape


class TestAdaptive:
    def test_breakpoints(self):
        value, error = quad_with_breakpoints(lambda x: abs(x - 0.3), 0.0, 1.0, [0.3, 0.3, 5.0])
        assert value == pytest.approx(0.045 + 0.245, rel=1e-12)
        assert error < 1e-10

    def test_empty_interval(self):
        assert quad_with_breakpoints(np.sin, 1.0, 1.0) == (0.0, 0.0)

    def test_error_guard(self):
        assert check_quad_error(1.0, 1e-12, 1e-8, "ok") == 1.0
        with pytest.raises(AccuracyError) as info:
            check_quad_error(1.0, 1e-3, 1e-8, "too coarse")
        assert info.value.estimate == 1.0
