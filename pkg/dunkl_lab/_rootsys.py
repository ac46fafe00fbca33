import re
from dataclasses import replace
from typing import Optional, Sequence, Union

import numpy as np
from scipy import special

from ._specfun import (
    check_quad_error,
    circle_arc_rule,
    halfline_gaussian_rule,
    jacobi_on_interval,
    legendre_on_interval,
    quad_with_breakpoints,
    sphere_area,
    sphere_rule,
)
from ._utils import logger, refine
from .base import (
    AccuracyError,
    DomainError,
    DomainTag,
    Estimate,
    Multiplicity,
    NotARootSystemError,
    QuadratureRule,
    QuadratureSettings,
    RootSystem,
    ScalarField,
    UnsupportedDimensionError,
    UnsupportedGroupError,
    WeightContext,
)

_ROUND = 10


def reflect(alpha, x) -> np.ndarray:
    """σ_α(x) = x - 2<α,x>α/|α|², applied along the last axis of `x`."""
    alpha = np.asarray(alpha, dtype=float)
    norm2 = float(alpha @ alpha)
    if norm2 == 0:
        raise DomainError("cannot reflect in the zero vector")
    x = np.asarray(x, dtype=float)
    return x - (2 * (x @ alpha) / norm2)[..., None] * alpha


def reflection_matrix(alpha) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    return np.eye(len(alpha)) - 2 * np.outer(alpha, alpha) / (alpha @ alpha)


def _key(a: np.ndarray) -> bytes:
    return (np.round(a, _ROUND) + 0.0).tobytes()


# Root systems ------------------------------------------------------------------------
def normalize_roots(roots) -> np.ndarray:
    """Scale to |α|² = 2, add negatives, drop duplicates and check reflection closure."""
    roots = np.atleast_2d(np.asarray(roots, dtype=float))
    norms = np.linalg.norm(roots, axis=1)
    if np.any(norms == 0):
        raise NotARootSystemError("a root system cannot contain the zero vector")
    roots = np.sqrt(2) * roots / norms[:, None]
    unique: dict[bytes, np.ndarray] = {}
    for r in np.concatenate([roots, -roots]):
        unique.setdefault(_key(r), r)
    roots = np.array(list(unique.values()))

    cos = roots @ roots.T / 2
    parallel = np.isclose(np.abs(cos), 1.0, atol=1e-12)
    if np.any(parallel.sum(axis=1) != 2):
        raise NotARootSystemError("R ∩ ℝα must be {α, -α} for every root")
    keys = {_key(r) for r in roots}
    for alpha in roots:
        if any(_key(r) not in keys for r in reflect(alpha, roots)):
            raise NotARootSystemError(f"roots are not closed under the reflection in {alpha}")
    return roots


def select_positive(roots: np.ndarray, beta: Optional[np.ndarray] = None) -> np.ndarray:
    d = roots.shape[1]
    beta = 1.0 / np.arange(1, d + 1) if beta is None else np.asarray(beta, dtype=float)
    rng = np.random.default_rng(0)
    while np.any(np.abs(roots @ beta) < 1e-12):
        beta = beta + 1e-3 * rng.standard_normal(d)
    return roots[roots @ beta > 0]


def generate_group(roots, bound: int = 10_000) -> np.ndarray:
    """Closure of the reflections {σ_α} under composition, identity first."""
    roots = np.atleast_2d(np.asarray(roots, dtype=float))
    d = roots.shape[1]
    generators = [reflection_matrix(a) for a in roots]
    identity = np.eye(d)
    elements = {_key(identity): identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for g in frontier:
            for s in generators:
                h = s @ g
                k = _key(h)
                if k not in elements:
                    elements[k] = h
                    fresh.append(h)
                    if len(elements) > bound:
                        raise NotARootSystemError(
                            f"group closure exceeded {bound} elements; the roots do not generate a finite group"
                        )
        frontier = fresh
    return np.array(list(elements.values()))


def make_root_system(roots, kind="explicit", bound: int = 10_000) -> RootSystem:
    roots = normalize_roots(roots)
    positive = select_positive(roots)
    group = generate_group(positive, bound=bound)
    return RootSystem(roots=roots, positive_roots=positive, group=group, kind=kind)


def z2_root_system(d: int, bound: int = 10_000) -> RootSystem:
    return make_root_system(np.eye(d), kind="z2", bound=bound)


def dihedral_root_system(m: int, bound: int = 10_000) -> RootSystem:
    if m < 1:
        raise DomainError(f"dihedral(m) needs m >= 1, got {m}")
    angles = np.pi * np.arange(m) / m
    return make_root_system(np.stack([np.cos(angles), np.sin(angles)], axis=-1), kind="dihedral", bound=bound)


def root_orbits(root_system: RootSystem) -> tuple[int, ...]:
    """Orbit index of each positive root, numbered by first appearance."""
    positive = root_system.positive_roots
    index = {_key(a): i for i, a in enumerate(positive)}
    index.update({_key(-a): i for i, a in enumerate(positive)})
    labels = [-1] * len(positive)
    n_orbits = 0
    for i, alpha in enumerate(positive):
        if labels[i] >= 0:
            continue
        for image in root_system.group @ alpha:
            labels[index[_key(image)]] = n_orbits
        n_orbits += 1
    return tuple(labels)


def make_multiplicity(root_system: RootSystem, values: Union[float, Sequence[float]]) -> Multiplicity:
    orbits = root_orbits(root_system)
    n_orbits = max(orbits) + 1
    values = np.atleast_1d(np.asarray(values, dtype=float))
    if len(values) == 1 and n_orbits > 1:
        values = np.repeat(values, n_orbits)
    if len(values) != n_orbits:
        raise DomainError(f"expected {n_orbits} orbit multiplicities, got {len(values)}")
    if np.any(values < 0):
        raise DomainError("multiplicities must be nonnegative")
    return Multiplicity(
        orbit_values=tuple(float(v) for v in values),
        positive_root_values=values[list(orbits)],
        orbit_of_positive_root=orbits,
    )


def z2_multiplicity(root_system: RootSystem, alphas: Sequence[float]) -> Multiplicity:
    """Per-axis values (α_1, …, α_d) mapped onto the orbits of Z2^d."""
    alphas = np.asarray(alphas, dtype=float)
    axes = np.argmax(np.abs(root_system.positive_roots), axis=1)
    orbits = root_orbits(root_system)
    per_orbit = np.empty(len(alphas))
    per_orbit[[orbits[i] for i in range(len(axes))]] = alphas[axes]
    return make_multiplicity(root_system, per_orbit)


# Weight ------------------------------------------------------------------------------
def _weight_raw(root_system, multiplicity, convention, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    k = multiplicity.positive_root_values
    if convention == "product":
        # <α, x> = √2 x_l for α = √2 e_l
        return np.prod(np.abs(x @ root_system.positive_roots.T / np.sqrt(2)) ** (2 * k), axis=-1)
    return np.prod(np.abs(x @ root_system.positive_roots.T) ** (2 * k), axis=-1)


def weight(ctx: WeightContext, x) -> Union[float, np.ndarray]:
    """ω_k(x) along the last axis of `x`."""
    value = _weight_raw(ctx.root_system, ctx.multiplicity, ctx.convention, x)
    return float(value) if np.ndim(value) == 0 else value


def convention_scale(ctx: WeightContext) -> float:
    """Ratio of ω_k to the per-axis product ∏|x_l|^{2α_l} on a Z2^d context."""
    if ctx.convention == "product":
        return 1.0
    return float(2.0 ** ctx.gamma)


def weighted_sphere_rule(ctx: WeightContext, n: int) -> QuadratureRule:
    """Rule for ∫_{S^{d-1}} g(β) ω_k(β) dσ(β) whose weights already carry ω_k.

    The circle is split at the reflection walls, each arc getting a Gauss–Jacobi rule
    with the wall exponents 2k(α). On S² a Z2^3 weight separates in (cos θ, φ); other
    groups fall back to the product rule with the weight folded into the weights.
    """
    d = ctx.dim
    k = ctx.multiplicity.positive_root_values
    positive = ctx.root_system.positive_roots
    if d == 1:
        nodes = np.array([[1.0], [-1.0]])
        weights = weight(ctx, nodes)
    elif d == 2:
        walls = np.concatenate(
            [np.arctan2(positive[:, 1], positive[:, 0]) + np.pi / 2, np.arctan2(positive[:, 1], positive[:, 0]) - np.pi / 2]
        )
        exponents = np.concatenate([2 * k, 2 * k])
        keep = exponents > 0
        theta, weights = circle_arc_rule(
            n,
            walls[keep],
            exponents[keep],
            lambda th: weight(ctx, np.stack([np.cos(th), np.sin(th)], axis=-1)),
        )
        nodes = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    elif d == 3 and ctx.is_z2:
        a1, a2, a3 = ctx.alphas
        scale = convention_scale(ctx)
        # u = cos θ: (1-u²)^{α1+α2} |u|^{2α3} on each hemisphere
        u_hi, w_hi = jacobi_on_interval(n, 0.0, 1.0, a1 + a2, 2 * a3)
        w_hi = w_hi * (1 + u_hi) ** (a1 + a2)
        u = np.concatenate([u_hi, -u_hi])
        wu = np.concatenate([w_hi, w_hi])
        walls = np.array([0.0, np.pi / 2, np.pi, 3 * np.pi / 2])
        exponents = np.array([2 * a2, 2 * a1, 2 * a2, 2 * a1])
        keep = exponents > 0
        phi, wphi = circle_arc_rule(
            n, walls[keep], exponents[keep], lambda p: np.abs(np.cos(p)) ** (2 * a1) * np.abs(np.sin(p)) ** (2 * a2)
        )
        s = np.sqrt(1 - u**2)
        nodes = np.stack(
            [np.outer(s, np.cos(phi)).ravel(), np.outer(s, np.sin(phi)).ravel(), np.repeat(u, len(phi))], axis=-1
        )
        weights = scale * np.outer(wu, wphi).ravel()
    elif d == 3:
        logger.warning("weighted sphere rule: no wall-matched rule for this group in d=3, using the product rule")
        base = sphere_rule(3, n)
        nodes = base.nodes
        weights = base.weights * weight(ctx, nodes)
    else:
        raise UnsupportedDimensionError(f"sphere rules exist for d in {{1, 2, 3}}, got d={d}")
    keep = weights > 0
    return QuadratureRule(
        nodes=nodes[keep], weights=weights[keep], domain_tag=DomainTag.sphere, params=(("d", d), ("weighted", True))
    )


def _sphere_order(d: int, n: int) -> int:
    return max(8, n // 2 if d == 2 else n // 8)


def sphere_weight_mass(ctx: WeightContext) -> Estimate:
    """d_k = ∫_{S^{d-1}} ω_k dσ by direct spherical quadrature."""
    if ctx.dim not in (1, 2, 3):
        raise UnsupportedDimensionError(f"sphere rules exist for d in {{1, 2, 3}}, got d={ctx.dim}")
    if ctx.gamma == 0:
        return Estimate(value=sphere_area(ctx.dim), error=0.0, order=0)
    if ctx.dim == 1:
        return Estimate(value=float(np.sum(weight(ctx, np.array([[1.0], [-1.0]])))), error=0.0, order=1)
    return refine(lambda n: weighted_sphere_rule(ctx, n).mass, ctx.quadrature, order=16, label="sphere weight mass")


def _angular_weight_mass(ctx: WeightContext) -> float:
    """∫_0^{2π} ω_k(cos θ, sin θ) dθ by adaptive quadrature split at the walls."""
    positive = ctx.root_system.positive_roots
    normals = np.arctan2(positive[:, 1], positive[:, 0])
    walls = np.mod(np.concatenate([normals + np.pi / 2, normals - np.pi / 2]), 2 * np.pi)
    value, error = quad_with_breakpoints(
        lambda th: weight(ctx, np.array([np.cos(th), np.sin(th)])), 0.0, 2 * np.pi, walls, epsrel=1e-12
    )
    return check_quad_error(value, error, 1e-9, "angular weight mass")


def gaussian_weight_integral(ctx: WeightContext) -> Optional[float]:
    """∫ e^{-|x|²} ω_k dx along a route that avoids the sphere rules, or None.

    Closed form on Z2^d; Gauss–Hermite for integer multiplicities, where ω_k is a
    polynomial; in the plane an adaptive angular integral times a half-line rule.
    """
    if ctx.is_z2:
        return float(np.prod(special.gamma(ctx.alphas + 0.5)) * convention_scale(ctx))
    values = ctx.multiplicity.positive_root_values
    if np.all(values == np.round(values)):
        return cartesian_gaussian_integral(ctx, max(64, int(round(ctx.gamma)) + 2))
    if ctx.dim == 2:
        radial = halfline_gaussian_rule(4, 2 * ctx.gamma + 1)
        return _angular_weight_mass(ctx) * radial.mass
    return None


def mehta_constant(ctx: WeightContext) -> float:
    """c_k = (∫ e^{-|x|²} ω_k dx)^{-1}.

    Falls back to the polar route through the sphere mass where no independent
    Gaussian integral exists (non-integer multiplicities on a group in d = 3).
    """
    integral = gaussian_weight_integral(ctx)
    if integral is not None:
        return 1.0 / integral
    logger.debug("Mehta constant taken from the sphere mass")
    d_k = ctx.sphere_mass if np.isfinite(ctx.sphere_mass) else sphere_weight_mass(ctx).value
    return float(2 / (d_k * special.gamma(ctx.gamma + ctx.dim / 2)))


# Integration -------------------------------------------------------------------------
def radial_rule(ctx: WeightContext, n: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ∫_0^radius F(r) r^{2γ+d-1} dr."""
    return jacobi_on_interval(n, 0.0, radius, 0.0, 2 * ctx.gamma + ctx.dim - 1)


def _shell_rule(ctx: WeightContext, n: int, r_min: float, r_max: float) -> tuple[np.ndarray, np.ndarray]:
    if r_min == 0:
        return radial_rule(ctx, n, r_max)
    r, w = legendre_on_interval(n, r_min, r_max)
    return r, w * r ** (2 * ctx.gamma + ctx.dim - 1)


def polar_integrate(ctx: WeightContext, f: ScalarField, order: Optional[int] = None) -> Estimate:
    """∫ f ω_k dx in polar form, radial fast path when `f` carries its profile."""
    settings = ctx.quadrature
    radius = f.support_radius if f.support_radius is not None else settings.radial_cutoff

    def integrate_shell(n: int, r_min: float, r_max: float):
        r, w = _shell_rule(ctx, n, r_min, r_max)
        if f.radial and f.profile is not None:
            return ctx.sphere_mass * np.dot(w, f.profile(r))
        sphere = weighted_sphere_rule(ctx, _sphere_order(ctx.dim, n))
        points = r[:, None, None] * sphere.nodes[None, :, :]
        return np.dot(w, f(points) @ sphere.weights)

    estimate = refine(
        lambda n: integrate_shell(n, 0.0, radius), settings, order=order, label=f"polar integral of {f.name}"
    )
    if f.support_radius is None:
        tail = abs(integrate_shell(estimate.order, radius, 1.5 * radius))
        if tail > settings.tail_tol * max(1.0, abs(estimate.value)):
            logger.warning(f"polar integral of {f.name}: tail mass {tail:.3e} beyond r={radius}")
            raise AccuracyError(
                f"polar integral of {f.name} truncated at r={radius} with tail {tail:.3e}",
                estimate=float(np.real(estimate.value)),
                error=tail,
            )
    return estimate


def cartesian_gaussian_integral(ctx: WeightContext, n: int = 64) -> float:
    """∫ e^{-|x|²} ω_k dx with a tensor Gauss–Hermite rule (exact for integer multiplicities)."""
    x, w = special.roots_hermite(n)
    points, weights = tensor_grid([x] * ctx.dim, [w] * ctx.dim)
    return float(np.dot(weights, weight(ctx, points)))


def cartesian_integrate(ctx: WeightContext, f: ScalarField, n: int) -> float:
    """∫_{[-R,R]^d} f ω_k dx on a Z2^d context, |x_l|^{2α_l} absorbed axis by axis."""
    radius = f.support_radius if f.support_radius is not None else ctx.quadrature.radial_cutoff
    nodes, weights = axis_weight_rules(ctx, n, radius)
    points, tensor = tensor_grid(nodes, weights)
    return float(np.dot(tensor, f(points))) * convention_scale(ctx)


def axis_weight_rules(ctx: WeightContext, n: int, radius: float) -> tuple[list, list]:
    """Per-axis rules on [-R, R] for |x_l|^{2α_l} dx, split at 0."""
    nodes, weights = [], []
    for a in ctx.alphas:
        if a == 0:
            x, w = legendre_on_interval(2 * n, -radius, radius)
        else:
            xp, wp = jacobi_on_interval(n, 0.0, radius, 0.0, 2 * a)
            x, w = np.concatenate([-xp[::-1], xp]), np.concatenate([wp[::-1], wp])
        nodes.append(x)
        weights.append(w)
    return nodes, weights


def tensor_grid(nodes: Sequence[np.ndarray], weights: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    grids = np.meshgrid(*nodes, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=-1)
    tensor = np.ones(points.shape[0])
    for w_grid in np.meshgrid(*weights, indexing="ij"):
        tensor = tensor * w_grid.ravel()
    return points, tensor


# Context construction ----------------------------------------------------------------
_Z2 = re.compile(r"^z2\^(\d+)$", re.IGNORECASE)
_DIHEDRAL = re.compile(r"^dihedral\((\d+)\)$", re.IGNORECASE)


def parse_group(spec: str, d: Optional[int] = None, bound: int = 10_000) -> RootSystem:
    """Root system from "z2^d", "dihedral(m)" or "roots:a,b;c,d;…"."""
    text = spec.strip().replace(" ", "")
    if text.lower() in ("z2", "z2^d"):
        if d is None:
            raise DomainError("group 'z2' needs a dimension")
        return z2_root_system(d, bound)
    if m := _Z2.match(text):
        return z2_root_system(int(m.group(1)), bound)
    if m := _DIHEDRAL.match(text):
        return dihedral_root_system(int(m.group(1)), bound)
    if text.lower().startswith("roots:"):
        rows = [[float(v) for v in row.split(",")] for row in text[6:].split(";") if row]
        if len({len(r) for r in rows}) != 1:
            raise DomainError(f"explicit roots must share one dimension: {spec}")
        return make_root_system(np.array(rows), kind="explicit", bound=bound)
    raise DomainError(f"unrecognised group spec {spec!r}")


def build_context(
    root_system: RootSystem,
    multiplicities: Union[float, Sequence[float]],
    convention: Optional[str] = None,
    quadrature: Optional[QuadratureSettings] = None,
) -> WeightContext:
    """Assemble an immutable WeightContext; multiplicities are per axis on Z2^d, per orbit otherwise."""
    quadrature = quadrature or QuadratureSettings()
    if root_system.dim > 3:
        raise UnsupportedDimensionError(f"d <= 3 is supported, got d={root_system.dim}")
    if root_system.kind == "z2":
        multiplicity = z2_multiplicity(root_system, np.broadcast_to(multiplicities, (root_system.dim,)))
        convention = convention or "product"
    else:
        multiplicity = make_multiplicity(root_system, multiplicities)
        if convention == "product":
            raise UnsupportedGroupError("the product weight convention exists only for Z2^d")
        convention = "root"
    ctx = WeightContext(
        root_system=root_system,
        multiplicity=multiplicity,
        gamma=float(np.sum(multiplicity.positive_root_values)),
        mehta=float("nan"),
        sphere_mass=float("nan"),
        convention=convention,
        quadrature=quadrature,
    )
    ctx = replace(ctx, sphere_mass=float(sphere_weight_mass(ctx).value))
    ctx = replace(ctx, mehta=mehta_constant(ctx))
    logger.debug(f"context {root_system.kind} d={ctx.dim} |W|={root_system.order} γ={ctx.gamma:.6g}")
    return ctx
