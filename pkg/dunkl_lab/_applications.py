"""Decay of the kernel, spherical means of V_k and generalized translations."""

from typing import Optional, Sequence

import numpy as np

from ._intertwine import _vk_values, radial_dual_constant
from ._kernel import (
    _require_z2,
    axis_mu_rule,
    density_constant,
    density_rule,
    dunkl_kernel_product,
    generalized_bessel,
    mu_tensor,
)
from ._rootsys import weight, weighted_sphere_rule
from ._specfun import jacobi_on_interval, sphere_rule
from ._utils import logger, order_cap, refine
from .base import (
    ContractError,
    DecayScan,
    DomainError,
    Estimate,
    QuadratureSettings,
    RegularPointError,
    ScalarField,
    UnsupportedDimensionError,
    WeightContext,
)

SHELL_RADII = (10.0, 20.0, 40.0, 80.0)


# Decay -------------------------------------------------------------------------------
def shell_samples(d: int, radius: float, samples: int) -> np.ndarray:
    """Points of the band radius <= |z| < radius + 2π: equispaced radii times directions."""
    radii = radius + 2 * np.pi * np.arange(samples) / samples
    if d == 1:
        directions = np.array([[1.0], [-1.0]])
    elif d == 2:
        theta = 2 * np.pi * np.arange(4 * samples) / (4 * samples)
        directions = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    elif d == 3:
        directions = sphere_rule(3, max(4, samples // 2)).nodes
    else:
        raise UnsupportedDimensionError(f"shell sampling supports d <= 3, got d={d}")
    return (radii[:, None, None] * directions[None, :, :]).reshape(-1, d)


def decay_scan(
    ctx: WeightContext, x, shell_radii: Sequence[float] = SHELL_RADII, samples_per_shell: int = 64
) -> DecayScan:
    """Shell maxima of |ω_k(x) K(-ix, z)| and of the group-averaged J_W."""
    _require_z2(ctx, "the decay scan")
    x = np.asarray(x, dtype=float).reshape(ctx.dim)
    radii = np.asarray(shell_radii, dtype=float)
    if np.any(np.diff(radii) <= 0):
        raise DomainError("shell radii must be strictly increasing")
    w = weight(ctx, x)
    regular = bool(np.all(x != 0))
    kernel_max, bessel_max = [], []
    for radius in radii:
        z = shell_samples(ctx.dim, radius, samples_per_shell)
        kernel_max.append(np.max(np.abs(dunkl_kernel_product(ctx, -1j * x, z))))
        bessel_max.append(np.max(np.abs(generalized_bessel(ctx, x, z))))
    kernel_max, bessel_max = np.array(kernel_max), np.array(bessel_max)
    logger.debug(f"decay scan at x={x}: {kernel_max}")
    return DecayScan(
        x=x,
        radii=radii,
        values=w * kernel_max,
        unweighted=kernel_max if regular else None,
        bessel_values=w * bessel_max,
        bessel_unweighted=bessel_max if regular else None,
    )


# Spherical means ---------------------------------------------------------------------
def spherical_mean_vk(
    ctx: WeightContext, h: ScalarField, t: float, order: Optional[int] = None
) -> tuple[Estimate, Estimate]:
    """(∫_S V_k(h)(tξ) ω_k(ξ) dσ(ξ), C t^{2-2γ-d} ∫_{B(0,t)} h(y) (t² - |y|²)^{γ-1} dy)."""
    _require_z2(ctx, "the spherical mean of V_k")
    d, gamma = ctx.dim, ctx.gamma
    if d < 2:
        raise UnsupportedDimensionError("the spherical mean identity needs d >= 2; use spherical_mean_rank1")
    if t <= 0:
        raise DomainError(f"t must be positive, got {t}")
    settings = ctx.quadrature

    def lhs(n: int):
        rule = weighted_sphere_rule(ctx, max(8, n // 4))
        return np.dot(rule.weights, _vk_values(ctx, h, t * rule.nodes, n))

    def rhs(n: int):
        rho, w = jacobi_on_interval(n, 0.0, t, gamma - 1, d - 1)
        w = w * (t + rho) ** (gamma - 1)
        sphere = sphere_rule(d, n if d == 2 else max(8, n // 2))
        inner = h(rho[:, None, None] * sphere.nodes[None, :, :]) @ sphere.weights
        return radial_dual_constant(ctx) * t ** (2 - 2 * gamma - d) * np.dot(w, inner)

    cap = order_cap(settings, d)
    left = refine(lhs, settings, order=order or 32, label=f"spherical mean of V_k({h.name})", max_order=min(cap, 128))
    right = refine(rhs, settings, order=order, label=f"ball mean of {h.name}")
    return left, right


def spherical_mean_rank1(gamma: float, h: ScalarField, x: float, order: Optional[int] = None) -> tuple[Estimate, Estimate]:
    """((V_k(h)(x) + V_k(h)(-x)) / 2, c x^{1-2γ} ∫_{-x}^{x} h(y) (x² - y²)^{γ-1} dy)."""
    if gamma <= 0 or x <= 0:
        raise DomainError(f"the rank-one spherical mean needs gamma > 0 and x > 0, got {gamma}, {x}")
    settings = QuadratureSettings()

    def lhs(n: int):
        t, w = axis_mu_rule(gamma, n)
        return 0.5 * (np.dot(w, h(t * x)) + np.dot(w, h(-t * x)))

    def rhs(n: int):
        y, w = jacobi_on_interval(n, -x, x, gamma - 1, gamma - 1)
        return density_constant(gamma) * x ** (1 - 2 * gamma) * np.dot(w, h(y))

    return (
        refine(lhs, settings, order=order, label="rank-one spherical mean"),
        refine(rhs, settings, order=order, label="rank-one ball mean"),
    )


# Translations ------------------------------------------------------------------------
def translate_rank1(gamma: float, f: ScalarField, x: float, y: float, order: Optional[int] = None) -> Estimate:
    """τ_x f(y) on the rank-one group.

    ½∫ f(r)(1 + (x+y)/r) Φ(t) dt + ½∫ f(-r)(1 - (x+y)/r) Φ(t) dt, r = √(x² + y² + 2xyt),
    with Φ(t) ∝ (1+t)(1-t²)^{γ-1} normalized to a probability density. For even f the
    two halves collapse to ∫ f(r) Φ(t) dt.
    """
    if gamma <= 0:
        raise DomainError(f"the rank-one translation needs gamma > 0, got {gamma}")
    x, y = float(x), float(y)

    def integrate(n: int):
        t, w = axis_mu_rule(gamma, n)
        r = np.sqrt(np.maximum(x * x + y * y + 2 * x * y * t, 0.0))
        if f.even:
            return np.dot(w, f(r))
        ratio = np.divide(x + y, r, out=np.zeros_like(r), where=r > 0)
        return 0.5 * np.dot(w, f(r) * (1 + ratio) + f(-r) * (1 - ratio))

    return refine(integrate, QuadratureSettings(), order=order, label=f"τ_x({f.name})")


def _radial_profile(F: ScalarField):
    if F.profile is None:
        raise ContractError(f"{F.name} carries no radial profile")
    return F.profile


def translate_radial(
    ctx: WeightContext,
    F: ScalarField,
    x,
    y,
    density_form: bool = False,
    order: Optional[int] = None,
) -> Estimate:
    """τ_x f(y) = ∫ F(√(|x|² + |y|² + 2<x, η>)) dμ_y(η) for radial f = F(|·|).

    The default integrates against the tensor rule of μ_y, valid for every y. With
    `density_form` the measure is written as 𝒦(y, η) dη, which needs y regular.
    """
    _require_z2(ctx, "the radial translation")
    profile = _radial_profile(F)
    x = np.asarray(x, dtype=float).reshape(ctx.dim)
    y = np.asarray(y, dtype=float).reshape(ctx.dim)
    if density_form and np.any(y == 0):
        raise RegularPointError(f"the density form of τ_x needs a regular y, got {y}")
    if not density_form and np.any(ctx.alphas <= 0):
        raise DomainError("the radial translation needs strictly positive multiplicities")
    base = float(x @ x + y @ y)

    def integrate(n: int):
        if density_form:
            rule = density_rule(ctx, y, n)
            eta, w = rule.nodes, rule.weights
        else:
            t, w = mu_tensor(ctx, n)
            eta = t * y
        return np.dot(w, profile(np.sqrt(np.maximum(base + 2 * eta @ x, 0.0))))

    return refine(
        integrate,
        ctx.quadrature,
        order=order,
        label=f"τ_x({F.name})",
        max_order=order_cap(ctx.quadrature, ctx.dim),
    )
