"""Dunkl differential-difference operators T_j."""

from typing import Optional

import numpy as np

from ._rootsys import polar_integrate, reflect
from ._utils import logger
from .base import ContractError, DomainError, Estimate, ScalarField, WeightContext

WALL_TOL = 1e-8
# central-difference steps balancing rounding against O(h²) or, for C¹ fields, O(h) truncation
_FD_STEP = {"smooth": np.finfo(float).eps ** (1 / 3), "C1": np.finfo(float).eps ** (1 / 2)}


def gradient(f: ScalarField, x: np.ndarray) -> np.ndarray:
    """∇f at a batch (N, d): analytic when available, else central differences."""
    if f.gradient is not None:
        return np.asarray(f.gradient(x))
    n, d = x.shape
    h = _FD_STEP[f.smoothness_hint] * (1 + np.linalg.norm(x, axis=1))
    shifted = np.repeat(x[None], 2 * d, axis=0)  # (2d, N, d)
    for l in range(d):
        shifted[2 * l, :, l] += h
        shifted[2 * l + 1, :, l] -= h
    values = f(shifted)  # (2d, N)
    return ((values[0::2] - values[1::2]) / (2 * h)).T


def dunkl_apply(ctx: WeightContext, j: int, f: ScalarField, x):
    """T_j f(x) = ∂_j f(x) + Σ_{α∈R₊} k(α) α_j (f(x) - f(σ_α x)) / <α, x>.

    `x` is a point (d,) or a batch (N, d). Difference quotients within WALL_TOL·|x| of a
    wall are replaced by their limit <∇f(x), α>.
    """
    if not 0 <= j < ctx.dim:
        raise DomainError(f"coordinate index {j} outside 0..{ctx.dim - 1}")
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    grad = gradient(f, x)
    fx = f(x)
    result = grad[:, j].astype(np.result_type(grad, fx))
    norm = np.linalg.norm(x, axis=1)
    for alpha, k in zip(ctx.root_system.positive_roots, ctx.multiplicity.positive_root_values):
        if k == 0 or alpha[j] == 0:
            continue
        proj = x @ alpha
        on_wall = np.abs(proj) <= WALL_TOL * norm
        quotient = np.empty_like(result)
        if np.any(~on_wall):
            off = ~on_wall
            quotient[off] = (fx[off] - f(reflect(alpha, x[off]))) / proj[off]
        if np.any(on_wall):
            quotient[on_wall] = grad[on_wall] @ alpha
        result = result + k * alpha[j] * quotient
    return result[0] if single else result


def antisymmetry_pair(
    ctx: WeightContext, j: int, f: ScalarField, g: ScalarField, order: Optional[int] = None
) -> Estimate:
    """∫ T_j f · g ω_k dx + ∫ T_j g · f ω_k dx, which vanishes for compactly supported f."""
    if f.support_radius is None:
        raise ContractError(f"antisymmetry needs a declared support radius for {f.name}")

    def integrand(x: np.ndarray) -> np.ndarray:
        return dunkl_apply(ctx, j, f, x) * g(x) + dunkl_apply(ctx, j, g, x) * f(x)

    pair = ScalarField(
        func=integrand,
        dim=ctx.dim,
        name=f"T_{j} pair of {f.name}, {g.name}",
        support_radius=f.support_radius,
    )
    logger.debug(f"antisymmetry of T_{j} on {f.name}, {g.name} up to r={f.support_radius}")
    return polar_integrate(ctx, pair, order=order)
