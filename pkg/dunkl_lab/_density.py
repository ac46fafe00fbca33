"""Absolute-continuity witnesses: ball-measure ratios and the spherical density average."""

from typing import Callable, Optional, Sequence

import numpy as np

from ._intertwine import radial_dual_constant
from ._kernel import _require_z2, _weighted_axis, weighted_density_product
from ._rootsys import convention_scale
from ._specfun import ball_volume, check_quad_error, quad_with_breakpoints
from ._utils import logger
from .base import (
    BallRatioSeries,
    DomainError,
    RegularPointError,
    SingularPointError,
    UnsupportedDimensionError,
    WeightContext,
)

RADIUS_SCHEDULE = (16, 32, 64, 128, 256)
BALL_TOL = 1e-7

AxisFactor = Callable[[float], float]


def _ball_product_integral(
    factors: Sequence[AxisFactor],
    breakpoints: Sequence[Sequence[float]],
    center: np.ndarray,
    r: float,
    epsrel: float = 1e-10,
) -> tuple[float, float]:
    """∫_{B(center, r)} ∏_l φ_l(x_l) dx by nested adaptive quadrature.

    The first coordinate runs over x_1 = c_1 + r sin θ so the remaining (d-1)-ball has the
    smooth radius r cos θ; the last coordinate is a plain interval.
    """
    phi, points, c = factors[0], breakpoints[0], float(center[0])
    if len(factors) == 1:
        return quad_with_breakpoints(phi, c - r, c + r, points, epsrel=epsrel)

    def slice_mass(theta: float) -> float:
        x1 = c + r * np.sin(theta)
        head = phi(x1)
        if head == 0:
            return 0.0
        inner, _ = _ball_product_integral(factors[1:], breakpoints[1:], center[1:], r * np.cos(theta), epsrel)
        return head * inner * r * np.cos(theta)

    thetas = [np.arcsin((p - c) / r) for p in points if abs(p - c) < r]
    return quad_with_breakpoints(slice_mass, -np.pi / 2, np.pi / 2, thetas, epsrel=epsrel)


def _nu_factors(ctx: WeightContext, y: np.ndarray):
    factors = [lambda u, a=a, yl=yl: float(_weighted_axis(a, u, yl)) for a, yl in zip(ctx.alphas, y)]
    points = [(-abs(yl), 0.0, abs(yl)) for yl in y]
    return factors, points


def _mu_factors(ctx: WeightContext, x: np.ndarray):
    factors = [lambda u, a=a, xl=xl: float(_weighted_axis(a, xl, u)) for a, xl in zip(ctx.alphas, x)]
    points = [(-abs(xl), 0.0, abs(xl)) for xl in x]
    return factors, points


def _check_ball_inputs(ctx: WeightContext, center: np.ndarray, r: float):
    _require_z2(ctx, "the ball-measure estimator")
    if ctx.dim not in (1, 2, 3):
        raise UnsupportedDimensionError(f"ball cubature supports d <= 3, got d={ctx.dim}")
    if r <= 0:
        raise DomainError(f"ball radius must be positive, got {r}")
    if np.any(ctx.alphas <= 0):
        raise DomainError("representing densities need strictly positive multiplicities")


def ball_measure_nu(ctx: WeightContext, y, center, r: float) -> float:
    """ν_y(B(center, r)) = ∫_B 𝒦°(x, y) dx."""
    y = np.asarray(y, dtype=float).reshape(ctx.dim)
    center = np.asarray(center, dtype=float).reshape(ctx.dim)
    _check_ball_inputs(ctx, center, r)
    factors, points = _nu_factors(ctx, y)
    value, error = _ball_product_integral(factors, points, center, r)
    value = check_quad_error(value, error, BALL_TOL, "ball measure of ν_y")
    return convention_scale(ctx) * value


def ball_measure_mu(ctx: WeightContext, x, center, r: float) -> float:
    """ω_k(x) μ_x(B(center, r)) = ∫_B 𝒦°(x, y) dy."""
    x = np.asarray(x, dtype=float).reshape(ctx.dim)
    center = np.asarray(center, dtype=float).reshape(ctx.dim)
    _check_ball_inputs(ctx, center, r)
    factors, points = _mu_factors(ctx, x)
    value, error = _ball_product_integral(factors, points, center, r)
    value = check_quad_error(value, error, BALL_TOL, "ball measure of μ_x")
    return convention_scale(ctx) * value


def _series(center, measure: Callable[[float], float], d: int, schedule, target) -> BallRatioSeries:
    radii = 1.0 / np.asarray(schedule, dtype=float)
    ratios = np.array([measure(r) for r in radii]) / ball_volume(d, radii)
    # running sup over the finer radii: nonincreasing along the schedule
    sup_ratios = np.maximum.accumulate(ratios[::-1])[::-1]
    return BallRatioSeries(
        center=np.asarray(center, dtype=float),
        radii=radii,
        ratios=ratios,
        sup_ratios=sup_ratios,
        limit_estimate=float(ratios[-1]),
        target=target,
    )


def ratio_series_nu(ctx: WeightContext, y, center, schedule: Sequence[int] = RADIUS_SCHEDULE) -> BallRatioSeries:
    """ν_y(B(center, 1/p)) / m(B(center, 1/p)) for p along the schedule; tends to 𝒦°(center, y)."""
    center = np.asarray(center, dtype=float).reshape(ctx.dim)
    if np.any(center == 0):
        raise RegularPointError(f"center {center} lies on a reflection hyperplane")
    target = weighted_density_product(ctx, center, np.asarray(y, dtype=float))
    logger.debug(f"Δ series for y={y} at {center}, target {target:.6g}")
    return _series(center, lambda r: ball_measure_nu(ctx, y, center, r), ctx.dim, schedule, target)


def ratio_series_mu(ctx: WeightContext, x, center, schedule: Sequence[int] = RADIUS_SCHEDULE) -> BallRatioSeries:
    """ω_k(x) μ_x(B(center, 1/p)) / m(B(center, 1/p)); tends to 𝒦°(x, center)."""
    x = np.asarray(x, dtype=float).reshape(ctx.dim)
    if np.any(x == 0):
        raise RegularPointError(f"x = {x} lies on a reflection hyperplane")
    center = np.asarray(center, dtype=float).reshape(ctx.dim)
    target = weighted_density_product(ctx, x, center)
    logger.debug(f"Λ series for x={x} at {center}, target {target:.6g}")
    return _series(center, lambda r: ball_measure_mu(ctx, x, center, r), ctx.dim, schedule, target)


# Spherical average -------------------------------------------------------------------
def _sphere_integral(ctx: WeightContext, t: float, y: np.ndarray) -> float:
    """∫_{S^{d-1}} 𝒦°(tβ, y) dσ(β) with breakpoints where t|β_l| = |y_l|."""
    a = ctx.alphas
    if ctx.dim == 2:

        def on_circle(theta: float) -> float:
            beta = t * np.array([np.cos(theta), np.sin(theta)])
            return float(np.prod(_weighted_axis(a, beta, y)))

        cuts = [0.0, np.pi / 2, np.pi, 3 * np.pi / 2]
        c1, c2 = min(abs(y[0]) / t, 1.0), min(abs(y[1]) / t, 1.0)
        for base in (np.arccos(c1), np.arcsin(c2)):
            cuts += [base, np.pi - base, np.pi + base, 2 * np.pi - base]
        value, error = quad_with_breakpoints(on_circle, 0.0, 2 * np.pi, cuts, epsrel=1e-11)
        return check_quad_error(value, error, 1e-8, "spherical density average")

    def on_parallel(u: float) -> float:
        s = np.sqrt(max(1 - u * u, 0.0))
        tail = float(_weighted_axis(a[2], t * u, y[2]))
        if tail == 0 or s == 0:
            return 0.0

        def on_angle(phi: float) -> float:
            return float(_weighted_axis(a[0], t * s * np.cos(phi), y[0]) * _weighted_axis(a[1], t * s * np.sin(phi), y[1]))

        cuts = [0.0, np.pi / 2, np.pi, 3 * np.pi / 2]
        for base in (np.arccos(min(abs(y[0]) / (t * s), 1.0)), np.arcsin(min(abs(y[1]) / (t * s), 1.0))):
            cuts += [base, np.pi - base, np.pi + base, 2 * np.pi - base]
        inner, _ = quad_with_breakpoints(on_angle, 0.0, 2 * np.pi, cuts, epsrel=1e-10)
        return tail * inner

    u_cut = min(abs(y[2]) / t, 1.0)
    value, error = quad_with_breakpoints(on_parallel, -1.0, 1.0, [-u_cut, 0.0, u_cut], epsrel=1e-9)
    return check_quad_error(value, error, 1e-7, "spherical density average")


def spherical_density_average(ctx: WeightContext, t: float, y, as_printed: bool = False) -> tuple[float, float]:
    """(∫_{S^{d-1}} 𝒦(tβ, y) ω_k(β) dσ(β), C t^{2-2γ-d} (t² - |y|²)^{γ-1}).

    With `as_printed` the left side carries an extra factor 1/d_k.
    """
    _require_z2(ctx, "the spherical density average")
    if ctx.dim < 2 or ctx.dim > 3:
        raise UnsupportedDimensionError(f"the spherical density average needs d in {{2, 3}}, got d={ctx.dim}")
    if t <= 0:
        raise DomainError(f"t must be positive, got {t}")
    y = np.asarray(y, dtype=float).reshape(ctx.dim)
    rho = float(np.linalg.norm(y))
    if np.isclose(t, rho, rtol=1e-12, atol=1e-14):
        raise SingularPointError(f"the spherical density average is singular at t = |y| = {rho}")
    if t < rho:
        return 0.0, 0.0
    gamma, d = ctx.gamma, ctx.dim
    lhs = convention_scale(ctx) * t ** (-2 * gamma) * _sphere_integral(ctx, t, y)
    if as_printed:
        lhs /= ctx.sphere_mass
    rhs = radial_dual_constant(ctx) * t ** (2 - 2 * gamma - d) * (t * t - rho * rho) ** (gamma - 1)
    return float(lhs), float(rhs)


def spherical_density_constant(ctx: WeightContext, t: float, y) -> float:
    """The power p with (printed left side) · d_k^p = right side."""
    printed, rhs = spherical_density_average(ctx, t, y, as_printed=True)
    if printed <= 0 or rhs <= 0 or np.isclose(ctx.sphere_mass, 1.0):
        return float("nan")
    return float(np.log(rhs / printed) / np.log(ctx.sphere_mass))
