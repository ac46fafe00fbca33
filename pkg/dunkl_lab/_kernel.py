"""Dunkl kernels, their Laplace representations and the representing densities on Z2^d."""

from typing import Optional, Union

import numpy as np
from scipy import special

from ._rootsys import convention_scale, weight
from ._specfun import SERIES_CUTOFF, jacobi_on_interval, normalized_bessel
from ._utils import logger, refine
from .base import (
    DomainError,
    DomainTag,
    Estimate,
    QuadratureRule,
    QuadratureSettings,
    RegularPointError,
    UnsupportedGroupError,
    WeightContext,
)


def _require_z2(ctx: WeightContext, what: str):
    if not ctx.is_z2:
        raise UnsupportedGroupError(f"{what} has a closed form only on Z2^d contexts")


def density_constant(gamma):
    """Γ(γ+½) / (√π Γ(γ)), the normalizer of the rank-one density."""
    return special.gamma(np.asarray(gamma) + 0.5) / (np.sqrt(np.pi) * special.gamma(gamma))


# Closed forms ------------------------------------------------------------------------
def dunkl_kernel_rank1(gamma, x, t, series_cutoff: float = SERIES_CUTOFF):
    """K(x, t) = j_{γ-½}(ixt) + xt/(2γ+1) j_{γ+½}(ixt), broadcasting over all arguments."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0):
        raise DomainError(f"rank-one kernel needs gamma >= 0, got {gamma}")
    ixt = 1j * np.asarray(x, dtype=complex) * np.asarray(t, dtype=complex)
    value = normalized_bessel(gamma - 0.5, ixt, series_cutoff) - 1j * ixt / (2 * gamma + 1) * normalized_bessel(
        gamma + 0.5, ixt, series_cutoff
    )
    return complex(value) if np.ndim(value) == 0 else value


def dunkl_kernel_product(ctx: WeightContext, x, z):
    """K(x, z) = ∏_l K(x_l, z_l) with parameters α_l; broadcasts over leading axes."""
    _require_z2(ctx, "the Dunkl kernel")
    factors = dunkl_kernel_rank1(
        ctx.alphas,
        np.asarray(x, dtype=complex),
        np.asarray(z, dtype=complex),
        series_cutoff=ctx.quadrature.series_cutoff,
    )
    value = np.prod(np.atleast_1d(factors), axis=-1)
    return complex(value) if np.ndim(value) == 0 else value


# Densities ---------------------------------------------------------------------------
def _weighted_axis(alpha, x, y) -> np.ndarray:
    """c (|x| - s y)^{α-1} (|x| + s y)^α on |y| < |x|, s = sign(x), zero elsewhere."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    alpha = np.broadcast_to(np.asarray(alpha, dtype=float), x.shape)
    ax = np.abs(x)
    sy = np.where(x < 0, -y, y)
    inside = np.abs(y) < ax
    safe_lo = np.where(inside, ax - sy, 1.0)
    safe_hi = np.where(inside, ax + sy, 1.0)
    value = density_constant(alpha) * safe_lo ** (alpha - 1) * safe_hi**alpha
    return np.where(inside, value, 0.0)


def density_rank1(gamma, x, y):
    """Density of μ_x at y for the rank-one group."""
    if np.any(np.asarray(x) == 0):
        raise DomainError("the rank-one density is undefined at x = 0")
    if np.any(np.asarray(gamma) <= 0):
        raise DomainError(f"the rank-one density needs gamma > 0, got {gamma}")
    value = _weighted_axis(gamma, x, y) / np.abs(x) ** (2 * np.asarray(gamma))
    return float(value) if np.ndim(value) == 0 else value


def _check_positive(ctx: WeightContext):
    if np.any(ctx.alphas <= 0):
        raise DomainError("representing densities need strictly positive multiplicities")


def weighted_density_product(ctx: WeightContext, x, y):
    """𝒦°(x, y) = ω_k(x) 𝒦(x, y), defined for every x."""
    _require_z2(ctx, "the representing density")
    _check_positive(ctx)
    value = convention_scale(ctx) * np.prod(_weighted_axis(ctx.alphas, x, y), axis=-1)
    return float(value) if np.ndim(value) == 0 else value


def density_product(ctx: WeightContext, x, y):
    """𝒦(x, y) = ∏_l 𝒦(x_l, y_l); x must be regular."""
    _require_z2(ctx, "the representing density")
    _check_positive(ctx)
    if np.any(np.asarray(x) == 0):
        raise RegularPointError(f"x = {x} lies on a reflection hyperplane")
    value = np.prod(_weighted_axis(ctx.alphas, x, y) / np.abs(x) ** (2 * ctx.alphas), axis=-1)
    return float(value) if np.ndim(value) == 0 else value


# Representing-measure rules ----------------------------------------------------------
def axis_mu_rule(alpha: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """t-nodes and probability weights of the rank-one μ_1."""
    if alpha == 0:
        return np.ones(1), np.ones(1)
    t, w = jacobi_on_interval(n, -1.0, 1.0, alpha - 1, alpha)
    return t, w * density_constant(alpha)


def mu_tensor(ctx: WeightContext, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor t-nodes (N, d) and weights with μ_x = image of the rule under t ↦ t ⊙ x."""
    _require_z2(ctx, "the representing measure")
    axes = [axis_mu_rule(a, n) for a in ctx.alphas]
    grids = np.meshgrid(*[t for t, _ in axes], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.ones(nodes.shape[0])
    for g in np.meshgrid(*[w for _, w in axes], indexing="ij"):
        weights = weights * g.ravel()
    return nodes, weights


def mu_rule(ctx: WeightContext, x, n: int) -> QuadratureRule:
    """Quadrature rule for μ_x: ∫ h dμ_x ≈ Σ w_i h(y_i)."""
    x = np.asarray(x, dtype=float)
    t, w = mu_tensor(ctx, n)
    return QuadratureRule(nodes=t * x, weights=w, domain_tag=DomainTag.product, params=(("measure", "mu"),))


def axis_nu_nodes(alpha: float, y, radius: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one ν_y restricted to |x| < radius, vectorized over `y`.

    s = x² - y² folds both half-lines onto [0, radius² - y²] with the s^{α-1} edge absorbed;
    returns nodes and weights of shape y.shape + (2n,) (zero weights when |y| >= radius).
    """
    y = np.asarray(y, dtype=float)
    if alpha == 0:
        return y[..., None], np.ones(y.shape + (1,))
    span = np.maximum(radius**2 - y**2, 0.0)
    s, ws = jacobi_on_interval(n, np.zeros_like(span), span, 0.0, alpha - 1)
    u = np.sqrt(s + y[..., None] ** 2)
    c = density_constant(alpha)
    safe_u = np.where(u > 0, u, 1.0)
    w_plus = c * ws * (u + y[..., None]) / (2 * safe_u)
    w_minus = c * ws * (u - y[..., None]) / (2 * safe_u)
    return np.concatenate([u, -u], axis=-1), np.concatenate([w_plus, w_minus], axis=-1)


def nu_rule(ctx: WeightContext, y, radius: float, n: int) -> Optional[QuadratureRule]:
    """Quadrature rule for ν_y on the box |x_l| < radius: ∫ f dν_y ≈ Σ w_i f(x_i).

    None when the box misses the support of ν_y.
    """
    _require_z2(ctx, "the representing measure")
    _check_positive(ctx)
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) >= radius):
        return None
    axes = [axis_nu_nodes(a, yl, radius, n) for a, yl in zip(ctx.alphas, y)]
    grids = np.meshgrid(*[x for x, _ in axes], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.full(nodes.shape[0], convention_scale(ctx))
    for g in np.meshgrid(*[w for _, w in axes], indexing="ij"):
        weights = weights * g.ravel()
    keep = weights > 0
    return QuadratureRule(
        nodes=nodes[keep], weights=weights[keep], domain_tag=DomainTag.product, params=(("measure", "nu"),)
    )


def density_rule(ctx: WeightContext, x, n: int) -> QuadratureRule:
    """Rule for ∫ h(y) 𝒦(x, y) dy built from explicit density values; x must be regular.

    Each axis box (-|x_l|, |x_l|) gets a Gauss–Jacobi rule matched to the density's end
    exponents and the weights are multiplied by 𝒦(x, y) over those exponents.
    """
    x = np.asarray(x, dtype=float).reshape(ctx.dim)
    if np.any(x == 0):
        raise RegularPointError(f"x = {x} lies on a reflection hyperplane")
    axes = []
    for a, xl in zip(ctx.alphas, x):
        ax = abs(xl)
        # (|x| - s y)^{α-1} blows up at y = s|x|, (|x| + s y)^α vanishes at y = -s|x|
        hi_exp, lo_exp = (a - 1, a) if xl > 0 else (a, a - 1)
        y, w = jacobi_on_interval(n, -ax, ax, hi_exp, lo_exp)
        axes.append((y, w / ((ax - y) ** hi_exp * (y + ax) ** lo_exp)))
    grids = np.meshgrid(*[y for y, _ in axes], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.ones(nodes.shape[0])
    for g in np.meshgrid(*[w for _, w in axes], indexing="ij"):
        weights = weights * g.ravel()
    weights = weights * density_product(ctx, x, nodes)
    return QuadratureRule(nodes=nodes, weights=weights, domain_tag=DomainTag.product, params=(("measure", "density"),))


# Laplace representation --------------------------------------------------------------
def kernel_via_laplace(ctx_or_gamma: Union[WeightContext, float], x, z, order: Optional[int] = None) -> Estimate:
    """K(x, z) = ∫ 𝒦(x, y) e^{<y, z>} dy by quadrature against μ_x."""
    if isinstance(ctx_or_gamma, WeightContext):
        ctx = ctx_or_gamma
        _require_z2(ctx, "the Laplace representation")
        alphas = ctx.alphas
        settings = ctx.quadrature
    else:
        alphas = np.atleast_1d(float(ctx_or_gamma))
        settings = QuadratureSettings()
    x = np.atleast_1d(np.asarray(x, dtype=float))
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(x == 0):
        raise RegularPointError(f"x = {x} lies on a reflection hyperplane")
    if np.any(alphas <= 0):
        raise DomainError("the Laplace representation needs strictly positive multiplicities")

    def laplace(n: int) -> complex:
        value = 1.0 + 0j
        for a, xl, zl in zip(alphas, x, z):
            t, w = axis_mu_rule(a, n)
            value *= np.dot(w, np.exp(t * xl * zl))
        return value

    # the integrand is a product, so each axis is integrated on its own
    return refine(laplace, settings, order=order, label="Laplace representation")


# Group averages ----------------------------------------------------------------------
def generalized_bessel(ctx: WeightContext, x, z):
    """J_W(-ix, z) = |W|^{-1} Σ_w K(-ix, wz)."""
    _require_z2(ctx, "the generalized Bessel function")
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=complex)
    images = np.einsum("wij,...j->...wi", ctx.root_system.group, z)
    value = np.mean(dunkl_kernel_product(ctx, -1j * x[..., None, :], images), axis=-1)
    return complex(value) if np.ndim(value) == 0 else value


def group_exponential(ctx: WeightContext, z, y):
    """E_W(-iz, y) = |W|^{-1} Σ_w e^{-i<y, wz>}, broadcasting over leading axes of `y`."""
    wz = np.asarray(ctx.root_system.group @ np.asarray(z, dtype=complex))  # (|W|, d)
    phases = np.exp(-1j * np.asarray(y, dtype=float) @ wz.T)
    return np.mean(phases, axis=-1)


def group_density(ctx: WeightContext, x, y, weighted: bool = False):
    """𝒦_W(x, y) = |W|^{-1} Σ_w 𝒦(wx, y), or 𝒦°_W with `weighted`."""
    wx = ctx.root_system.group @ np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)[..., None, :]
    if weighted:
        return np.mean(weighted_density_product(ctx, wx, y), axis=-1)
    return np.mean(density_product(ctx, wx, y), axis=-1)


def bessel_via_density(
    ctx: WeightContext, x, z, weighted: bool = False, order: Optional[int] = None
) -> Estimate:
    """∫ E_W(-iz, y) 𝒦_W(x, y) dy (or with 𝒦°_W) by quadrature against each μ_{wx}."""
    _require_z2(ctx, "the generalized Bessel function")
    x = np.asarray(x, dtype=float)
    if not weighted and np.any(x == 0):
        raise RegularPointError(f"x = {x} lies on a reflection hyperplane")
    scale = weight(ctx, x) if weighted else 1.0

    def average(n: int) -> complex:
        t, w = mu_tensor(ctx, n)
        total = 0j
        for g in ctx.root_system.group:
            total += np.dot(w, group_exponential(ctx, z, t * (g @ x)))
        return scale * total / ctx.root_system.order

    logger.debug(f"J_W density route at x={x}, weighted={weighted}")
    return refine(average, ctx.quadrature, order=order, label="generalized Bessel integral")
