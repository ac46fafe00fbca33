"""Closed-form kernel against its Laplace representation, the densities and the operators T_j."""

import numpy as np

from .._kernel import (
    bessel_via_density,
    density_product,
    density_rule,
    dunkl_kernel_product,
    dunkl_kernel_rank1,
    generalized_bessel,
    kernel_via_laplace,
)
from .._operators import antisymmetry_pair, dunkl_apply
from .._rootsys import weight
from .._specfun import normalized_bessel
from ..base import CheckRow, ScalarField
from ..catalog import exponential, gaussian
from ._shared import checker, random_regular, require_positive, require_z2, worst_abs, worst_pair

SUITE = "kernel"

_EIGEN_AXIS = np.array([-1.4, -0.7, 0.35, 0.9, 1.6])
_EIGEN_FREQUENCIES = {
    1: [(0.5,), (1.0,)],
    2: [(0.5, 0.2), (1.0, 1.0)],
    3: [(0.5, 0.2, 0.3), (1.0, 1.0, 1.0)],
}


def _direction(d: int, coefficients) -> np.ndarray:
    u = np.asarray(coefficients[:d], dtype=float)
    return u / np.linalg.norm(u)


def _ball_samples(rng: np.random.Generator, n: int, d: int, radius: float) -> np.ndarray:
    directions = rng.normal(size=(n, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return directions * radius * rng.uniform(size=(n, 1)) ** (1 / d)


def _laplace_grid(lab, imaginary: bool) -> tuple[np.ndarray, np.ndarray]:
    ctx = lab.ctx
    steps = np.linspace(0.25, 2.0, lab.samples("grid_points", 9))
    ux = _direction(ctx.dim, (1.0, 0.6, -0.35))
    uz = _direction(ctx.dim, (0.8, -0.5, 0.3))
    closed, laplace = [], []
    for s in lab.progress(steps, desc="Laplace representation"):
        for t in steps:
            x, z = s * ux, t * uz * (1j if imaginary else 1)
            closed.append(dunkl_kernel_product(ctx, x, z))
            laplace.append(kernel_via_laplace(ctx, x, z).value)
    return np.array(laplace), np.array(closed)


def _kernel_field(ctx, y) -> ScalarField:
    y = np.asarray(y, dtype=float)
    return ScalarField(
        func=lambda p: np.real(dunkl_kernel_product(ctx, p, y)), dim=ctx.dim, name=f"K(·, {tuple(y)})"
    )


def run(lab) -> list[CheckRow]:
    require_z2(lab, SUITE)
    require_positive(lab, SUITE)
    ctx = lab.ctx
    tol = lab.tolerance_settings
    row = checker(SUITE)
    rng = lab.rng()
    d = ctx.dim
    n = lab.samples("random_samples", 1000)
    rows: list[CheckRow] = []

    rows.append(row("01-rank1-anchor", "K(1, 1) = cosh 1 at γ = 1", dunkl_kernel_rank1(1.0, 1.0, 1.0), np.cosh(1.0), 1e-10, mode="abs"))

    x = rng.normal(size=(n, d))
    rows.append(
        row("02-initial", "K(x, 0) = 1", *worst_abs(dunkl_kernel_product(ctx, x, np.zeros(d)), np.ones(n)), 1e-15, mode="abs")
    )

    rows.append(row("03-laplace-real", "K(x, z) = ∫ e^{<y, z>} dμ_x(y)", *worst_pair(*_laplace_grid(lab, False)), tol.kernel))
    rows.append(row("04-laplace-imag", "K(x, iz) = ∫ e^{i<y, z>} dμ_x(y)", *worst_pair(*_laplace_grid(lab, True)), tol.kernel))

    xs, ys = _ball_samples(rng, n, d, 5.0), _ball_samples(rng, n, d, 5.0)
    bound = np.max(np.abs(dunkl_kernel_product(ctx, 1j * xs, ys)))
    rows.append(row("05-bound", "|K(ix, y)| <= 1", bound, 1.0, tol.kernel_bound, mode="le"))

    xc = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
    zc = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
    lam = (rng.normal(size=n) + 1j * rng.normal(size=n))[:, None]
    rows.append(
        row("06-symmetry", "K(x, z) = K(z, x)", *worst_pair(dunkl_kernel_product(ctx, xc, zc), dunkl_kernel_product(ctx, zc, xc)), 1e-10)
    )
    rows.append(
        row(
            "07-scaling",
            "K(λx, z) = K(x, λz)",
            *worst_pair(dunkl_kernel_product(ctx, lam * xc, zc), dunkl_kernel_product(ctx, xc, lam * zc)),
            1e-10,
        )
    )

    masses = [density_rule(ctx, p, 16).mass for p in random_regular(rng, 20, d)]
    rows.append(row("08-normalization", "∫ 𝒦(x, y) dy = 1", *worst_pair(np.array(masses), np.ones(len(masses))), tol.normalization))

    xr = random_regular(rng, 50, d)
    yr = rng.uniform(-0.9, 0.9, size=xr.shape) * xr
    lhs, rhs = [], []
    for w in ctx.root_system.group:
        lhs.append(density_product(ctx, xr @ w.T, yr))
        rhs.append(density_product(ctx, xr, yr @ w))
    rows.append(row("09-equivariance", "𝒦(wx, y) = 𝒦(x, w⁻¹y)", *worst_pair(np.array(lhs), np.array(rhs)), tol.equivariance))
    r = rng.uniform(0.25, 4.0, size=(len(xr), 1))
    rows.append(
        row(
            "10-dilation",
            "𝒦(rx, y) = r^{-d} 𝒦(x, y/r)",
            *worst_pair(density_product(ctx, r * xr, yr), r[:, 0] ** (-d) * density_product(ctx, xr, yr / r)),
            tol.equivariance,
        )
    )

    grid = np.stack([g.ravel() for g in np.meshgrid(*[_EIGEN_AXIS] * d, indexing="ij")], axis=-1)
    deviation = 0.0
    for y in _EIGEN_FREQUENCIES[d]:
        field = _kernel_field(ctx, y)
        values = field(grid)
        for j in range(d):
            residual = np.abs(dunkl_apply(ctx, j, field, grid) - y[j] * values) / (1 + np.abs(values))
            deviation = max(deviation, float(np.max(residual)))
    rows.append(row("11-eigen", "T_j K(·, y)(x) = y_j K(x, y)", deviation, 0.0, tol.eigen, mode="abs"))

    f, g = gaussian(d), exponential(d, *np.linspace(0.4, -0.3, d))
    for j in range(d):
        pair = antisymmetry_pair(ctx, j, f, g)
        rows.append(
            row(f"12-antisymmetry-{j + 1}", f"∫ T_{j + 1}f g ω_k + ∫ f T_{j + 1}g ω_k = 0", pair, 0.0, tol.antisymmetry, mode="abs")
        )

    xb, zb = random_regular(rng, 10, d), rng.normal(size=(10, d))
    closed = np.prod(normalized_bessel(ctx.alphas - 0.5, xb * zb), axis=-1)
    rows.append(row("13-bessel-closed", "J_W(-ix, z) = ∏ j_{α-½}(x_l z_l)", *worst_pair(generalized_bessel(ctx, xb, zb), closed), tol.kernel))

    x0, z0 = xb[0], zb[0]
    j_w = generalized_bessel(ctx, x0, z0)
    rows.append(row("14-bessel-density", "J_W(-ix, z) = ∫ E_W(-iz, y) 𝒦_W(x, y) dy", bessel_via_density(ctx, x0, z0), j_w, tol.kernel))
    rows.append(
        row(
            "15-bessel-weighted",
            "ω_k(x) J_W(-ix, z) = ∫ E_W(-iz, y) 𝒦°_W(x, y) dy",
            bessel_via_density(ctx, x0, z0, weighted=True),
            weight(ctx, x0) * j_w,
            tol.kernel,
        )
    )
    return rows
