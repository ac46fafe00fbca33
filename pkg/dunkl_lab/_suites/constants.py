"""Weight function, Mehta constant and sphere mass."""

import numpy as np
from scipy import special

from .._rootsys import (
    build_context,
    cartesian_gaussian_integral,
    cartesian_integrate,
    gaussian_weight_integral,
    polar_integrate,
    weight,
)
from ..base import CheckRow, WeightContext
from ..catalog import gaussian
from ._shared import checker, skip, worst_pair

SUITE = "constants"
_HERMITE_ORDER = 64


def _integer_multiplicities(ctx: WeightContext) -> bool:
    values = ctx.multiplicity.positive_root_values
    return bool(np.all(values == np.round(values)))


def _gaussian_integral(ctx: WeightContext):
    """∫ e^{-|x|²} ω_k dx on a Cartesian grid, or None when no exact grid applies."""
    if ctx.is_z2:
        return cartesian_integrate(ctx, gaussian(ctx.dim), _HERMITE_ORDER)
    if _integer_multiplicities(ctx):
        # ω_k is then a polynomial of degree 2γ, integrated exactly by Gauss–Hermite
        return cartesian_gaussian_integral(ctx, max(_HERMITE_ORDER, int(ctx.gamma) + 2))
    return None


def _variants(ctx: WeightContext) -> list[np.ndarray]:
    base = ctx.alphas if ctx.is_z2 else np.array(ctx.multiplicity.orbit_values)
    shifts = (0.0, 0.25, 0.5, 1.0, 1.75) if ctx.is_z2 else (0.0, 1.0, 2.0, 3.0, 4.0)
    return [base + s for s in shifts]


def run(lab) -> list[CheckRow]:
    ctx = lab.ctx
    tol = lab.tolerance_settings
    row = checker(SUITE)
    rows: list[CheckRow] = []
    d = ctx.dim

    cartesian = _gaussian_integral(ctx)
    if cartesian is None:
        skip(SUITE, "Cartesian Gaussian integral", "non-integer multiplicities on a general group")
    else:
        rows.append(row("01-mehta", "c_k ∫ e^{-|x|²} ω_k dx = 1", ctx.mehta * cartesian, 1.0, tol.constants))
        polar = polar_integrate(ctx, gaussian(d))
        rows.append(row("02-polar", "polar and Cartesian Gaussian integrals agree", polar, cartesian, tol.constants))
        rows.append(
            row(
                "03-sphere-mass",
                "d_k = 2 / (c_k Γ(γ + d/2))",
                ctx.sphere_mass,
                2 * cartesian / special.gamma(ctx.gamma + d / 2),
                tol.constants,
            )
        )

    for i, values in enumerate(lab.progress(_variants(ctx), desc="constants"), start=1):
        variant = build_context(ctx.root_system, values, convention=ctx.convention, quadrature=ctx.quadrature)
        integral = gaussian_weight_integral(variant)
        if integral is None:
            skip(SUITE, f"identity at k={values}", "no Gaussian integral independent of the sphere mass")
            continue
        label = ",".join(f"{v:g}" for v in values)
        rows.append(
            row(
                f"04-identity-{i:02d}",
                f"d_k c_k Γ(γ + d/2) = 2 at k=({label})",
                variant.sphere_mass * special.gamma(variant.gamma + d / 2) / integral,
                2.0,
                tol.constants,
            )
        )

    rng = lab.rng()
    n = lab.samples("random_samples", 1000)
    x = rng.normal(size=(n, d))
    base = weight(ctx, x)
    images = np.einsum("wij,nj->wni", ctx.root_system.group, x)
    lhs, rhs = worst_pair(weight(ctx, images), np.broadcast_to(base, images.shape[:2]))
    rows.append(row("05-weight-invariance", "ω_k(wx) = ω_k(x)", lhs, rhs, tol.equivariance))

    r = rng.uniform(0.0, 4.0, size=n)
    lhs, rhs = worst_pair(weight(ctx, r[:, None] * x), r ** (2 * ctx.gamma) * base)
    rows.append(row("06-weight-homogeneity", "ω_k(rx) = r^{2γ} ω_k(x)", lhs, rhs, tol.equivariance))

    group = ctx.root_system.group
    gram = np.einsum("wji,wjk->wik", group, group)
    rows.append(
        row("07-orthogonal", "wᵀw = I for every w in W", np.max(np.abs(gram - np.eye(d))), 0.0, 1e-12, mode="abs")
    )
    return rows
