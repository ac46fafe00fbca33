import numpy as np
import pytest

from dunkl_lab._applications import (
    SHELL_RADII,
    decay_scan,
    shell_samples,
    spherical_mean_rank1,
    spherical_mean_vk,
    translate_radial,
    translate_rank1,
)
from dunkl_lab._kernel import dunkl_kernel_rank1
from dunkl_lab.base import ContractError, DomainError, RegularPointError, ScalarField, UnsupportedDimensionError
from dunkl_lab.catalog import const, cosine, exponential, gaussian, identity, monomial, norm2, product


class TestDecay:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_shell_band(self, d):
        z = shell_samples(d, 10.0, 16)
        norms = np.linalg.norm(z, axis=1)
        assert np.all((norms >= 10.0 - 1e-12) & (norms < 10.0 + 2 * np.pi))

    def test_shell_dimension(self):
        with pytest.raises(UnsupportedDimensionError):
            shell_samples(4, 10.0, 8)

    def test_decreasing(self, z2_2):
        scan = decay_scan(z2_2, np.array([1.0, 1.0]), samples_per_shell=32)
        np.testing.assert_allclose(scan.radii, SHELL_RADII)
        assert np.all(np.diff(scan.values) < 0)
        assert scan.values[-1] / scan.values[0] < 0.25
        assert np.all(np.diff(scan.bessel_values) < 0)
        assert scan.unweighted is not None

    def test_singular_x(self, z2_2):
        scan = decay_scan(z2_2, np.array([0.0, 1.0]), samples_per_shell=16)
        np.testing.assert_allclose(scan.values, 0.0)
        np.testing.assert_allclose(scan.bessel_values, 0.0)
        assert scan.unweighted is None

    def test_radii_order(self, z2_1):
        with pytest.raises(DomainError):
            decay_scan(z2_1, np.array([1.0]), shell_radii=(20.0, 10.0))


class TestSphericalMeans:
    def test_rank_one_square(self):
        lhs, rhs = spherical_mean_rank1(1.0, monomial(1, 2, 1), 1.0)
        assert lhs.value == pytest.approx(1 / 3, rel=1e-9)
        assert rhs.value == pytest.approx(1 / 3, rel=1e-9)

    def test_rank_one_odd(self):
        lhs, rhs = spherical_mean_rank1(2.0, monomial(1, 1, 1), 1.5)
        assert abs(lhs.value) < 1e-12
        assert abs(rhs.value) < 1e-12

    def test_one_gives_sphere_mass(self, z2_2):
        lhs, rhs = spherical_mean_vk(z2_2, const(2), 1.5)
        assert lhs.value == pytest.approx(z2_2.sphere_mass, rel=1e-9)
        assert rhs.value == pytest.approx(z2_2.sphere_mass, rel=1e-9)

    @pytest.mark.parametrize("h", [monomial(2, 2, 1), monomial(2, 4, 2), product(monomial(2, 2, 1), monomial(2, 2, 2))])
    def test_polynomials(self, z2_2_mixed, h):
        lhs, rhs = spherical_mean_vk(z2_2_mixed, h, 1.3)
        assert lhs.value == pytest.approx(rhs.value, rel=1e-6)

    def test_gaussian(self, z2_2):
        lhs, rhs = spherical_mean_vk(z2_2, gaussian(2), 2.0)
        assert lhs.value == pytest.approx(rhs.value, rel=1e-5)

    def test_needs_two_dimensions(self, z2_1):
        with pytest.raises(UnsupportedDimensionError):
            spherical_mean_vk(z2_1, const(1), 1.0)

    def test_bad_arguments(self, z2_2):
        with pytest.raises(DomainError):
            spherical_mean_vk(z2_2, const(2), 0.0)
        with pytest.raises(DomainError):
            spherical_mean_rank1(0.0, const(1), 1.0)


class TestTranslations:
    def test_rank_one_origin_and_one(self, rng):
        f = exponential(1, 0.7)
        for x, y in rng.uniform(-2, 2, size=(5, 2)):
            assert translate_rank1(1.5, f, x, 0.0).value == pytest.approx(float(f(np.array([x]))[0]), rel=1e-7)
            assert translate_rank1(1.5, f, 0.0, y).value == pytest.approx(float(f(np.array([y]))[0]), rel=1e-7)
            assert translate_rank1(1.5, const(1), x, y).value == pytest.approx(1.0, rel=1e-7)

    @pytest.mark.parametrize("x, y", [(1.0, 0.5), (0.5, 1.0), (-1.0, 0.25), (0.3, -1.7)])
    def test_rank_one_linear(self, x, y):
        assert translate_rank1(1.0, identity(1), x, y).value == pytest.approx(x + y, rel=1e-10)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.5])
    def test_rank_one_square(self, gamma):
        x, y = 0.7, -1.2
        expected = x * x + y * y + 2 * x * y / (2 * gamma + 1)
        assert translate_rank1(gamma, monomial(1, 2, 1), x, y).value == pytest.approx(expected, rel=1e-10)

    def test_rank_one_symmetries(self):
        f, reflected = exponential(1, 0.7), exponential(1, -0.7)
        x, y = 0.7, -1.2
        value = translate_rank1(1.0, f, x, y).value
        assert translate_rank1(1.0, f, y, x).value == pytest.approx(value, rel=1e-7)
        assert translate_rank1(1.0, f, -x, -y).value == pytest.approx(translate_rank1(1.0, reflected, x, y).value, rel=1e-7)
        assert translate_rank1(1.0, f, -x, -y).value != pytest.approx(value, rel=1e-3)
        even = cosine(1)
        assert translate_rank1(1.0, even, -x, -y).value == pytest.approx(translate_rank1(1.0, even, x, y).value, rel=1e-7)

    def test_rank_one_kernel(self):
        gamma, z, x, y = 1.0, 0.8, 0.6, -0.9
        field = ScalarField(func=lambda p: np.real(dunkl_kernel_rank1(gamma, p[..., 0], z)), dim=1)
        expected = np.real(dunkl_kernel_rank1(gamma, x, z) * dunkl_kernel_rank1(gamma, y, z))
        assert translate_rank1(gamma, field, x, y).value == pytest.approx(expected, rel=1e-7)

    def test_radial(self, z2_2):
        f = gaussian(2)
        x, y = np.array([0.5, -0.4]), np.array([0.3, 0.7])
        assert translate_radial(z2_2, f, x, np.zeros(2)).value == pytest.approx(f(x), rel=1e-7)
        assert translate_radial(z2_2, const(2), x, y).value == pytest.approx(1.0, rel=1e-12)
        tensor = translate_radial(z2_2, f, x, y).value
        assert translate_radial(z2_2, f, y, x).value == pytest.approx(tensor, rel=1e-7)
        assert translate_radial(z2_2, f, x, y, density_form=True).value == pytest.approx(tensor, rel=1e-7)

    def test_radial_square(self, z2_2_mixed):
        x, y = np.array([0.5, -0.4]), np.array([0.3, 0.7])
        expected = x @ x + y @ y + 2 * np.sum(x * y / (2 * z2_2_mixed.alphas + 1))
        assert translate_radial(z2_2_mixed, norm2(2), x, y).value == pytest.approx(expected, rel=1e-10)
        assert translate_radial(z2_2_mixed, norm2(2), x, y, density_form=True).value == pytest.approx(expected, rel=1e-7)

    @pytest.mark.parametrize("f", [gaussian(1), norm2(1)])
    def test_radial_agrees_with_rank_one(self, z2_1, f):
        assert translate_radial(z2_1, f, [0.8], [-0.5]).value == pytest.approx(
            translate_rank1(1.0, f, 0.8, -0.5).value, rel=1e-7
        )

    def test_radial_contracts(self, z2_2):
        with pytest.raises(ContractError):
            translate_radial(z2_2, cosine(2), np.ones(2), np.ones(2))
        with pytest.raises(RegularPointError):
            translate_radial(z2_2, gaussian(2), np.ones(2), np.array([0.0, 1.0]), density_form=True)
