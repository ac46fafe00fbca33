"""Ball-ratio witnesses of the densities of μ_x and ν_y, and the spherical density average."""

import numpy as np

from .._density import (
    RADIUS_SCHEDULE,
    ball_measure_mu,
    ball_measure_nu,
    ratio_series_mu,
    ratio_series_nu,
    spherical_density_average,
    spherical_density_constant,
)
from .._kernel import group_density
from .._rootsys import weight
from ..base import BallRatioSeries, CheckRow
from ._shared import checker, random_regular, require_positive, require_z2, skip, worst_pair

SUITE = "density"

_PAIRS = {
    1: [((1.0,), (0.5,)), ((1.5,), (-0.4,)), ((-1.0,), (0.3,))],
    2: [((1.0, 1.0), (0.3, 0.3)), ((1.0, 2.0), (0.5, 0.5)), ((-0.8, 1.2), (0.2, -0.5))],
}
_SPHERES = {
    2: [(2.0, (1.0, 0.0)), (1.0, (0.0, 0.0)), (1.5, (0.3, 0.4))],
    3: [(2.0, (1.0, 0.0, 0.0)), (1.5, (0.3, 0.4, 0.2))],
}


def _series_rows(row, tag: str, label: str, series: BallRatioSeries, tol: float) -> list[CheckRow]:
    errors = np.abs(series.ratios - series.target)
    # a density linear near the center is matched exactly; steps below the floor are noise
    floor = 1e-8 * max(abs(series.target), 1.0)
    # one non-monotone step is allowed for quadrature noise
    violations = int(np.sum((np.diff(errors) > 0) & (errors[1:] > floor)))
    return [
        row(f"{tag}-limit", f"{label} at r = {series.radii[-1]:g} tends to 𝒦°", series.limit_estimate, series.target, tol),
        row(f"{tag}-sup-monotone", f"sup-sequence of {label} is nonincreasing", float(np.max(np.diff(series.sup_ratios))), 0.0, 0.0, mode="le"),
        row(f"{tag}-converging", f"error of {label} shrinks along the radius schedule", violations, 1, 0.0, mode="le"),
    ]


def run(lab) -> list[CheckRow]:
    require_z2(lab, SUITE)
    require_positive(lab, SUITE)
    ctx = lab.ctx
    tol = lab.tolerance_settings
    row = checker(SUITE)
    d = ctx.dim
    rows: list[CheckRow] = []

    if d not in _PAIRS:
        skip(SUITE, "ball ratios", f"nested ball cubature runs for d <= 2, got d={d}")
    else:
        for i, (x, y) in enumerate(lab.progress(_PAIRS[d], desc="ball ratios"), start=1):
            x, y = np.array(x), np.array(y)
            nu = ratio_series_nu(ctx, y, x, RADIUS_SCHEDULE)
            mu = ratio_series_mu(ctx, x, y, RADIUS_SCHEDULE)
            rows += _series_rows(row, f"{i:02d}-nu", "ν_y(B) / m(B)", nu, tol.density_ratio)
            rows += _series_rows(row, f"{i:02d}-mu", "ω_k(x) μ_x(B) / m(B)", mu, tol.density_ratio)
            rows.append(row(f"{i:02d}-routes", "both ball-ratio routes agree", nu.limit_estimate, mu.limit_estimate, tol.density_ratio))

        x, y = np.array(_PAIRS[d][0][0]), np.array(_PAIRS[d][0][1])
        r = 0.1 * float(np.linalg.norm(x))
        outside = ball_measure_mu(ctx, x, 1.5 * x, r)
        rows.append(row("10-mu-support", "μ_x vanishes outside B(0, |x|)", outside, 0.0, 0.0, mode="abs"))
        inside = ball_measure_nu(ctx, y, 0.3 * y, 0.1 * float(np.min(np.abs(y))))
        rows.append(row("11-nu-support", "ν_y vanishes on {|x_l| < |y_l| for some l}", inside, 0.0, 0.0, mode="abs"))

    rng = lab.rng()
    n = lab.samples("random_samples", 1000)
    x = random_regular(rng, 1, d)[0]
    y = 0.95 * np.abs(x) * rng.uniform(-1.0, 1.0, size=(n, d))
    base = group_density(ctx, x, y)
    images = np.einsum("wij,nj->wni", ctx.root_system.group, y)
    lhs, rhs = worst_pair(group_density(ctx, x, images), np.broadcast_to(base, images.shape[:2]))
    rows.append(row("15-group-invariance", "𝒦_W(x, wy) = 𝒦_W(x, y)", lhs, rhs, tol.equivariance))
    lhs, rhs = worst_pair(group_density(ctx, x, y, weighted=True), weight(ctx, x) * base)
    rows.append(row("16-group-weighted", "𝒦°_W(x, y) = ω_k(x) 𝒦_W(x, y)", lhs, rhs, tol.equivariance))

    if d not in _SPHERES:
        skip(SUITE, "spherical density average", "defined for d in {2, 3}")
        return rows
    for i, (t, y) in enumerate(_SPHERES[d], start=1):
        lhs, rhs = spherical_density_average(ctx, t, y)
        rows.append(
            row(f"20-sphere-{i}", f"∫_S 𝒦(tβ, y) ω_k(β) dσ = C t^(2-2γ-d) (t² - |y|²)^(γ-1) at t={t:g}", lhs, rhs, tol.spherical_density)
        )
    if not np.isclose(ctx.sphere_mass, 1.0):
        t, y = _SPHERES[d][0]
        power = spherical_density_constant(ctx, t, y)
        # a relative error δ in the two sides moves the fitted power by δ / |log d_k|
        rows.append(
            row(
                "21-sphere-constant",
                "power p of d_k relating the normalized average to the closed form",
                power,
                1.0,
                tol.spherical_density / abs(np.log(ctx.sphere_mass)),
                mode="abs",
            )
        )
    return rows
