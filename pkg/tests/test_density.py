import numpy as np
import pytest

from dunkl_lab._density import (
    ball_measure_mu,
    ball_measure_nu,
    ratio_series_mu,
    ratio_series_nu,
    spherical_density_average,
    spherical_density_constant,
)
from dunkl_lab._rootsys import weight
from dunkl_lab.base import DomainError, RegularPointError, SingularPointError, UnsupportedDimensionError


class TestBallMeasures:
    def test_mu_total_mass(self, z2_1):
        # a ball containing [-|x|, |x|] carries all of ω_k(x) μ_x
        x = np.array([1.3])
        assert ball_measure_mu(z2_1, x, np.zeros(1), 2.0) == pytest.approx(weight(z2_1, x), rel=1e-9)

    def test_mu_total_mass_plane(self, z2_2_mixed):
        x = np.array([0.8, -0.6])
        assert ball_measure_mu(z2_2_mixed, x, np.zeros(2), 1.5) == pytest.approx(weight(z2_2_mixed, x), rel=1e-6)

    def test_supports(self, z2_1):
        assert ball_measure_mu(z2_1, np.array([1.0]), np.array([1.5]), 0.1) == 0.0
        assert ball_measure_nu(z2_1, np.array([0.5]), np.array([0.2]), 0.1) == 0.0

    def test_bad_radius(self, z2_1):
        with pytest.raises(DomainError):
            ball_measure_nu(z2_1, np.array([0.5]), np.array([1.0]), 0.0)


class TestRatioSeries:
    @pytest.mark.parametrize("x, y", [(1.0, 0.5), (1.5, -0.4), (-1.0, 0.3)])
    def test_rank_one_limits(self, z2_1, x, y):
        nu = ratio_series_nu(z2_1, np.array([y]), np.array([x]))
        mu = ratio_series_mu(z2_1, np.array([x]), np.array([y]))
        assert nu.limit_estimate == pytest.approx(nu.target, rel=0.02)
        assert mu.limit_estimate == pytest.approx(mu.target, rel=0.02)
        assert nu.target == pytest.approx(mu.target)
        assert np.all(np.diff(nu.sup_ratios) <= 0)
        assert np.all(np.diff(nu.radii) < 0)

    def test_plane(self, z2_2):
        series = ratio_series_nu(z2_2, np.array([0.3, 0.3]), np.array([1.0, 1.0]))
        assert series.limit_estimate == pytest.approx(series.target, rel=0.02)

    def test_regular_center(self, z2_2):
        with pytest.raises(RegularPointError):
            ratio_series_nu(z2_2, np.array([0.3, 0.3]), np.array([0.0, 1.0]))
        with pytest.raises(RegularPointError):
            ratio_series_mu(z2_2, np.array([1.0, 0.0]), np.array([0.3, 0.3]))


class TestSphericalAverage:
    @pytest.mark.parametrize("t, y", [(2.0, (1.0, 0.0)), (1.0, (0.0, 0.0)), (1.5, (0.3, 0.4))])
    def test_both_sides(self, z2_2, t, y):
        lhs, rhs = spherical_density_average(z2_2, t, np.array(y))
        assert lhs == pytest.approx(rhs, rel=1e-4)

    def test_printed_constant(self, z2_2):
        assert spherical_density_constant(z2_2, 2.0, np.array([1.0, 0.0])) == pytest.approx(1.0, abs=1e-3)

    def test_inside_the_sphere(self, z2_2):
        assert spherical_density_average(z2_2, 0.5, np.array([1.0, 0.0])) == (0.0, 0.0)

    def test_singular(self, z2_2):
        with pytest.raises(SingularPointError):
            spherical_density_average(z2_2, 1.0, np.array([0.6, 0.8]))

    def test_rank_one(self, z2_1):
        with pytest.raises(UnsupportedDimensionError):
            spherical_density_average(z2_1, 1.0, np.array([0.2]))
