import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunkl_lab._intertwine import (
    ball_sup,
    contraction_ratios,
    duality_pair,
    homogeneity_check,
    radial_dual_constant,
    tvk_apply,
    tvk_gaussian_reference,
    tvk_many,
    tvk_radial,
    vk_apply,
    vk_many,
)
from dunkl_lab._kernel import dunkl_kernel_product
from dunkl_lab.base import ContractError, DomainError, UnsupportedGroupError
from dunkl_lab.catalog import bump, const, cosine, exponential, gaussian, monomial, polynomial


class TestVk:
    def test_one(self, z2_2_mixed, rng):
        values = vk_many(z2_2_mixed, const(2), rng.uniform(-2, 2, size=(10, 2))).value
        np.testing.assert_allclose(values, 1.0, rtol=1e-14)

    def test_linear(self, z2_1):
        assert vk_apply(z2_1, monomial(1, 1, 1), np.array([1.0])).value == pytest.approx(1 / 3, rel=1e-10)

    def test_origin(self, z2_2):
        estimate = vk_apply(z2_2, cosine(2), np.zeros(2))
        assert estimate.value == 1.0
        assert estimate.order == 0

    def test_exponential_gives_the_kernel(self, z2_2_mixed):
        x, z = np.array([[0.6, -1.1], [1.4, 0.2]]), np.array([0.9, -0.4])
        values = vk_many(z2_2_mixed, exponential(2, *z), x).value
        np.testing.assert_allclose(values, dunkl_kernel_product(z2_2_mixed, x, z), rtol=1e-9)

    def test_contraction(self, z2_2_mixed, rng):
        g = polynomial(2, [(0.5, (0, 0)), (1.0, (1, 0)), (-2.0, (1, 2))])
        ratios = contraction_ratios(z2_2_mixed, g, rng.uniform(-2, 2, size=(30, 2)), order=4)
        assert np.all(ratios <= 1 + 1e-6)
        assert np.max(ratios) > 0.1

    @given(
        st.lists(st.floats(min_value=-2, max_value=2).filter(lambda c: c == 0 or abs(c) > 1e-6), min_size=4, max_size=4),
        st.tuples(*[st.floats(min_value=-2, max_value=2).filter(lambda v: v == 0 or abs(v) > 1e-3)] * 2),
    )
    @settings(max_examples=60, deadline=None)
    def test_contraction_on_random_polynomials(self, z2_2_mixed, coefficients, point):
        g = polynomial(2, list(zip(coefficients, [(0, 0), (1, 0), (1, 2), (0, 3)])))
        ratio = contraction_ratios(z2_2_mixed, g, np.array([point]), order=4)[0]
        assert ratio <= 1 + 1e-6

    def test_ball_sup(self):
        assert ball_sup(monomial(2, 1, 1), 2.0) == pytest.approx(2.0, rel=1e-9)
        # |x_1 x_2| peaks at 45 degrees, between the grid directions
        assert ball_sup(polynomial(2, [(1.0, (1, 1))]), 1.0) == pytest.approx(0.5, rel=1e-8)
        assert ball_sup(polynomial(1, [(1.0, (0,)), (-3.0, (2,))]), 1.0) == pytest.approx(2.0, rel=1e-12)
        assert ball_sup(cosine(3), 0.0) == 1.0

    def test_only_z2(self, dihedral_3):
        with pytest.raises(UnsupportedGroupError):
            vk_apply(dihedral_3, const(2), np.ones(2))


class TestDualVk:
    def test_gaussian_anchor(self, z2_1):
        assert tvk_gaussian_reference(z2_1, 1.0, np.zeros(1)) == pytest.approx(0.5, rel=1e-14)
        assert tvk_apply(z2_1, gaussian(1), np.zeros(1)).value == pytest.approx(0.5, rel=1e-9)

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_gaussian_closed_form(self, z2_2_mixed, a):
        y = np.array([[0.0, 0.0], [0.3, 0.2], [0.5, -0.4]])
        values = tvk_many(z2_2_mixed, gaussian(2, a), y).value
        expected = [tvk_gaussian_reference(z2_2_mixed, a, p) for p in y]
        np.testing.assert_allclose(values, expected, rtol=1e-6)

    def test_outside_support(self, z2_2):
        estimate = tvk_apply(z2_2, bump(2, 1.0), np.array([0.2, 1.5]))
        assert estimate.value == 0.0

    def test_needs_support(self, z2_1):
        with pytest.raises(ContractError):
            tvk_apply(z2_1, cosine(1), np.zeros(1))

    def test_needs_positive(self):
        from dunkl_lab._rootsys import build_context, z2_root_system

        ctx = build_context(z2_root_system(2), [1.0, 0.0])
        with pytest.raises(DomainError):
            tvk_many(ctx, gaussian(2), np.zeros((1, 2)))
        with pytest.raises(DomainError):
            tvk_apply(ctx, gaussian(2), np.zeros(2))

    def test_point_rule_matches_batch(self, z2_2_mixed):
        f, y = bump(2, 1.5), np.array([0.4, -0.25])
        single = tvk_apply(z2_2_mixed, f, y).value
        assert single == pytest.approx(tvk_many(z2_2_mixed, f, y[None, :]).value[0], rel=1e-8)

    @pytest.mark.parametrize("f", [gaussian(2), gaussian(2, 2.0), bump(2, 1.0)])
    def test_radial_formula(self, z2_2, f):
        y = np.array([0.3, 0.3])
        assert tvk_radial(z2_2, f, y).value == pytest.approx(tvk_apply(z2_2, f, y).value, rel=1e-6)

    def test_radial_constant(self, z2_1):
        # Γ(3/2) · 2 / (√π Γ(1)) = 1
        assert radial_dual_constant(z2_1) == pytest.approx(1.0, rel=1e-12)

    def test_homogeneity(self, z2_2):
        scaled, base = homogeneity_check(z2_2, gaussian(2), 2.0, np.array([0.1, 0.2]))
        assert scaled.value == pytest.approx(base.value, rel=1e-8)


class TestDuality:
    @pytest.mark.parametrize("g", [const(1), cosine(1), monomial(1, 2, 1), exponential(1, 0.5)])
    def test_rank_one(self, z2_1, g):
        dual, direct = duality_pair(z2_1, gaussian(1), g)
        assert dual.value == pytest.approx(direct.value, rel=1e-7)

    def test_bump(self, z2_1_half):
        dual, direct = duality_pair(z2_1_half, bump(1, 2.0), cosine(1))
        assert dual.value == pytest.approx(direct.value, rel=1e-7)

    def test_gaussian_pairing_in_the_plane(self, z2_2):
        dual, direct = duality_pair(z2_2, gaussian(2, 2.0), gaussian(2, 0.5))
        assert dual.value == pytest.approx(direct.value, rel=1e-7)
