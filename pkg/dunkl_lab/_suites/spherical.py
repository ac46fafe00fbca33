"""Spherical means of V_k against ball means with the (t² - |y|²)^{γ-1} weight."""

import numpy as np

from .._applications import spherical_mean_rank1, spherical_mean_vk
from ..base import CheckRow
from ..catalog import const, gaussian, monomial, product
from ._shared import checker, require_positive, require_z2, skip

SUITE = "spherical"
_POLYNOMIAL_CASES = 10


def _polynomial(rng: np.random.Generator, d: int):
    """An even polynomial: a single even power, or a product of two on different axes."""
    k = int(rng.choice([2, 4, 6]))
    j = int(rng.integers(1, d + 1))
    if d > 1 and rng.uniform() < 0.5:
        other = j % d + 1
        return product(monomial(d, k, j), monomial(d, 2, other))
    return monomial(d, k, j)


def run(lab) -> list[CheckRow]:
    require_z2(lab, SUITE)
    require_positive(lab, SUITE)
    ctx = lab.ctx
    tol = lab.tolerance_settings
    row = checker(SUITE)
    rng = lab.rng()
    d = ctx.dim
    rows: list[CheckRow] = []

    # rank-one analogue, with the parameter of the first axis
    alpha = float(ctx.alphas[0])
    lhs, rhs = spherical_mean_rank1(alpha, const(1), 1.0)
    rows.append(row("01-rank1-one", "rank-one mean of 1 (left side)", lhs, 1.0, 1e-9))
    rows.append(row("02-rank1-one", "rank-one mean of 1 (right side)", rhs, 1.0, 1e-9))
    lhs, rhs = spherical_mean_rank1(alpha, monomial(1, 1, 1), 1.0)
    rows.append(row("03-rank1-odd", "rank-one mean of y vanishes", lhs, rhs, 1e-12, mode="abs"))
    lhs, rhs = spherical_mean_rank1(alpha, monomial(1, 2, 1), 1.0)
    rows.append(row("04-rank1-square", "(V_k(y²)(1) + V_k(y²)(-1)) / 2 = 1 / (2γ + 1)", lhs, 1 / (2 * alpha + 1), 1e-9))
    rows.append(row("05-rank1-square", "rank-one ball mean of y² = 1 / (2γ + 1)", rhs, 1 / (2 * alpha + 1), 1e-9))

    if d < 2:
        skip(SUITE, "spherical mean of V_k", "the sphere identity needs d >= 2")
        return rows

    lhs, rhs = spherical_mean_vk(ctx, const(d), 1.5)
    rows.append(row("10-one-left", "∫_S V_k(1)(tξ) ω_k(ξ) dσ = d_k", lhs, ctx.sphere_mass, 1e-9))
    rows.append(row("11-one-right", "ball mean of 1 = d_k", rhs, ctx.sphere_mass, 1e-9))

    for i in lab.progress(range(1, _POLYNOMIAL_CASES + 1), desc="spherical means"):
        h = _polynomial(rng, d)
        t = float(rng.uniform(0.5, 2.0))
        lhs, rhs = spherical_mean_vk(ctx, h, t)
        rows.append(row(f"20-polynomial-{i:02d}", f"spherical mean of V_k({h.name}) at t={t:.4g}", lhs, rhs, tol.spherical_mean))

    lhs, rhs = spherical_mean_vk(ctx, gaussian(d), 2.0)
    rows.append(row("30-gaussian", "spherical mean of V_k(e^{-|y|²}) at t=2", lhs, rhs, tol.spherical_mean_gaussian))
    return rows
