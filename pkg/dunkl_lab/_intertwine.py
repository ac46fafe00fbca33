"""The intertwining operator V_k and its dual ᵗV_k on Z2^d, as sums over μ_x and ν_y rules."""

from typing import Optional

import numpy as np
from scipy import optimize, special

from ._kernel import _require_z2, axis_nu_nodes, mu_tensor, nu_rule
from ._rootsys import axis_weight_rules, convention_scale, tensor_grid
from ._specfun import jacobi_on_interval, legendre_on_interval, sphere_rule
from ._utils import logger, order_cap, refine, sum_in_chunks
from .base import ContractError, DomainError, Estimate, ScalarField, WeightContext

_CHUNK = 1 << 20
_PAIR_BUDGET = 1 << 27


def _chunk_rows(row_size: int) -> int:
    return max(1, _CHUNK // max(1, row_size))


# V_k ---------------------------------------------------------------------------------
def _vk_values(ctx: WeightContext, g: ScalarField, points: np.ndarray, n: int) -> np.ndarray:
    t, w = mu_tensor(ctx, n)
    step = _chunk_rows(len(w))
    out = []
    for start in range(0, len(points), step):
        block = points[start : start + step]
        out.append(g(block[:, None, :] * t[None, :, :]) @ w)
    return np.concatenate(out) if out else np.zeros(0)


def vk_many(ctx: WeightContext, g: ScalarField, points, order: Optional[int] = None) -> Estimate:
    """V_k(g) at a batch of points (M, d)."""
    _require_z2(ctx, "the intertwining operator")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return refine(
        lambda n: _vk_values(ctx, g, points, n),
        ctx.quadrature,
        order=order,
        label=f"V_k({g.name})",
        max_order=order_cap(ctx.quadrature, ctx.dim),
    )


def _ball_grid(d: int, radius: float) -> np.ndarray:
    if d == 1:
        return np.linspace(-radius, radius, 513)[:, None]
    shells = np.linspace(0.0, radius, 33)
    directions = sphere_rule(d, 256 if d == 2 else 32).nodes
    return (shells[:, None, None] * directions[None, :, :]).reshape(-1, d)


def ball_sup(g: ScalarField, radius: float) -> float:
    """sup of |g| over the closed ball B(0, radius): a shell grid polished by a local search."""
    d = g.dim
    grid = _ball_grid(d, radius)
    values = np.abs(g(grid))
    best = int(np.argmax(values))
    if radius == 0:
        return float(values[best])
    result = optimize.minimize(
        lambda y: -np.abs(g(y[None, :])[0]),
        grid[best],
        method="SLSQP",
        constraints=[{"type": "ineq", "fun": lambda y: radius**2 - y @ y}],
        options={"ftol": 1e-14, "maxiter": 200},
    )
    # pull a slightly infeasible optimum back onto the sphere
    y = result.x * min(1.0, radius / max(float(np.linalg.norm(result.x)), np.finfo(float).tiny))
    return float(max(values[best], np.abs(g(y[None, :])[0])))


def contraction_ratios(ctx: WeightContext, g: ScalarField, points, order: Optional[int] = None) -> np.ndarray:
    """|V_k(g)(x)| / sup_{|y| <= |x|} |g(y)| at a batch of points; 0 where g vanishes on the ball."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    values = np.abs(vk_many(ctx, g, points, order=order).value)
    sups = np.array([ball_sup(g, float(np.linalg.norm(p))) for p in points])
    return np.divide(values, sups, out=np.zeros_like(values), where=sups > 0)


def vk_apply(ctx: WeightContext, g: ScalarField, x, order: Optional[int] = None) -> Estimate:
    """V_k(g)(x) = ∫ g(t ⊙ x) ∏ c_l (1-t_l)^{α_l-1} (1+t_l)^{α_l} dt."""
    _require_z2(ctx, "the intertwining operator")
    x = np.asarray(x, dtype=float).reshape(ctx.dim)
    if not np.any(x):
        return Estimate(value=g(x[None, :])[0], error=0.0, order=0)
    estimate = vk_many(ctx, g, x[None, :], order=order)
    return Estimate(value=estimate.value[0], error=estimate.error, order=estimate.order)


# ᵗV_k --------------------------------------------------------------------------------
def _require_support(f: ScalarField) -> float:
    if f.support_radius is None:
        raise ContractError(f"{f.name} needs a declared support radius for the dual intertwiner")
    return float(f.support_radius)


def _tvk_values(ctx: WeightContext, f: ScalarField, points: np.ndarray, radius: float, n: int) -> np.ndarray:
    m, d = points.shape
    axes = [axis_nu_nodes(a, points[:, l], radius, n) for l, a in enumerate(ctx.alphas)]
    nodes = [i.ravel() for i in np.meshgrid(*[np.arange(x.shape[-1]) for x, _ in axes], indexing="ij")]
    step = _chunk_rows(len(nodes[0]))
    out = []
    for start in range(0, m, step):
        rows = slice(start, start + step)
        coords = np.stack([axes[l][0][rows][:, nodes[l]] for l in range(d)], axis=-1)
        weights = np.ones(coords.shape[:2])
        for l in range(d):
            weights = weights * axes[l][1][rows][:, nodes[l]]
        out.append(np.sum(weights * f(coords), axis=-1))
    values = np.concatenate(out) * convention_scale(ctx)
    outside = np.any(np.abs(points) >= radius, axis=1)
    return np.where(outside, 0.0, values)


def tvk_many(ctx: WeightContext, f: ScalarField, points, order: Optional[int] = None) -> Estimate:
    """ᵗV_k(f) at a batch of points (M, d)."""
    _require_z2(ctx, "the dual intertwining operator")
    if np.any(ctx.alphas <= 0):
        raise DomainError("the dual intertwiner needs strictly positive multiplicities")
    radius = _require_support(f)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return refine(
        lambda n: _tvk_values(ctx, f, points, radius, n),
        ctx.quadrature,
        order=order,
        label=f"tV_k({f.name})",
        max_order=order_cap(ctx.quadrature, ctx.dim, factor=2),
    )


def tvk_apply(ctx: WeightContext, f: ScalarField, y, order: Optional[int] = None) -> Estimate:
    """ᵗV_k(f)(y) = ∫ 𝒦(x, y) f(x) ω_k(x) dx over {|x_l| > |y_l|} ∩ supp f, as ∫ f dν_y."""
    radius = _require_support(f)
    y = np.asarray(y, dtype=float).reshape(ctx.dim)
    if np.any(np.abs(y) >= radius):
        return Estimate(value=0.0, error=0.0, order=0)
    return refine(
        lambda n: nu_rule(ctx, y, radius, n).integrate(f),
        ctx.quadrature,
        order=order,
        label=f"tV_k({f.name})",
        max_order=order_cap(ctx.quadrature, ctx.dim, factor=2),
    )


def radial_dual_constant(ctx: WeightContext) -> float:
    """Γ(γ+d/2) d_k / (π^{d/2} Γ(γ))."""
    d = ctx.dim
    return float(special.gamma(ctx.gamma + d / 2) * ctx.sphere_mass / (np.pi ** (d / 2) * special.gamma(ctx.gamma)))


def tvk_radial(ctx: WeightContext, F: ScalarField, y, order: Optional[int] = None) -> Estimate:
    """ᵗV_k of a radial function from its profile: C ∫_{|y|}^∞ F(t) (t² - |y|²)^{γ-1} t dt."""
    if ctx.gamma <= 0:
        raise DomainError(f"the radial dual formula needs gamma > 0, got {ctx.gamma}")
    if F.profile is None:
        raise ContractError(f"{F.name} carries no radial profile")
    radius = _require_support(F)
    rho2 = float(np.sum(np.asarray(y, dtype=float) ** 2))
    if rho2 >= radius**2:
        return Estimate(value=0.0, error=0.0, order=0)
    constant = radial_dual_constant(ctx)

    def integrate(n: int):
        s, w = jacobi_on_interval(n, 0.0, radius**2 - rho2, 0.0, ctx.gamma - 1)
        return constant * 0.5 * np.dot(w, F.profile(np.sqrt(s + rho2)))

    return refine(integrate, ctx.quadrature, order=order, label=f"radial tV_k({F.name})")


def tvk_gaussian_reference(ctx: WeightContext, a: float, y) -> float:
    """Closed form ᵗV_k(e^{-a|x|²})(y) = e^{-a|y|²} / (a^γ π^{d/2} c_k)."""
    if a <= 0:
        raise DomainError(f"the Gaussian parameter must be positive, got {a}")
    y = np.asarray(y, dtype=float)
    return float(np.exp(-a * np.sum(y**2)) / (a**ctx.gamma * np.pi ** (ctx.dim / 2) * ctx.mehta))


# Identities --------------------------------------------------------------------------
def _split_legendre(n: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = legendre_on_interval(n, 0.0, radius)
    return np.concatenate([-x[::-1], x]), np.concatenate([w[::-1], w])


def duality_pair(
    ctx: WeightContext, f: ScalarField, g: ScalarField, order: Optional[int] = None
) -> tuple[Estimate, Estimate]:
    """(∫ ᵗV_k(f)(y) g(y) dy, ∫ V_k(g)(x) f(x) ω_k(x) dx) by two independent quadratures."""
    _require_z2(ctx, "the duality pairing")
    radius = _require_support(f)
    d = ctx.dim
    settings = ctx.quadrature
    start = order or (settings.order if d == 1 else 16)
    # (2n)^d outer nodes, each carrying an n^d inner rule
    cap = min(settings.max_order, int((_PAIR_BUDGET / 2**d) ** (1 / (2 * d))))

    def dual_side(n: int):
        y, wy = tensor_grid(*zip(*[_split_legendre(n, radius) for _ in range(d)]))
        values = _tvk_values(ctx, f, y, radius, n)
        return sum_in_chunks(wy, lambda s: values[s] * g(y[s]), len(wy))

    def direct_side(n: int):
        nodes, weights = axis_weight_rules(ctx, n, radius)
        x, wx = tensor_grid(nodes, weights)
        vg = _vk_values(ctx, g, x, n)
        return convention_scale(ctx) * sum_in_chunks(wx, lambda s: vg[s] * f(x[s]), len(wx))

    lhs = refine(dual_side, settings, order=start, label="duality, dual side", max_order=cap)
    rhs = refine(direct_side, settings, order=start, label="duality, direct side", max_order=cap)
    logger.debug(f"duality {f.name} / {g.name}: {lhs.value} vs {rhs.value}")
    return lhs, rhs


def homogeneity_check(
    ctx: WeightContext, f: ScalarField, r: float, y, order: Optional[int] = None
) -> tuple[Estimate, Estimate]:
    """(ᵗV_k(f)(ry), r^{2γ} ᵗV_k(f_r)(y)) with f_r(x) = f(rx)."""
    if r <= 0:
        raise DomainError(f"the scale must be positive, got {r}")
    radius = _require_support(f)
    y = np.asarray(y, dtype=float)
    f_r = ScalarField(func=lambda x: f.func(r * x), dim=f.dim, name=f"{f.name}(r·)", support_radius=radius / r)
    scaled = tvk_apply(ctx, f, r * y, order=order)
    base = tvk_apply(ctx, f_r, y, order=order)
    return scaled, Estimate(value=r ** (2 * ctx.gamma) * base.value, error=r ** (2 * ctx.gamma) * base.error, order=base.order)
