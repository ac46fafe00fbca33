"""V_k and its dual: intertwining identities, the duality pairing and the Gaussian closed form."""

import numpy as np

from .._intertwine import (
    contraction_ratios,
    duality_pair,
    homogeneity_check,
    tvk_apply,
    tvk_gaussian_reference,
    tvk_radial,
    vk_apply,
    vk_many,
)
from .._kernel import dunkl_kernel_product, weighted_density_product
from ..base import CheckRow
from ..catalog import bump, const, cosine, exponential, gaussian, monomial
from ._shared import checker, random_polynomial, require_positive, require_z2, skip, worst_pair

SUITE = "duality"

_GAUSSIAN_PARAMETERS = (0.5, 1.0, 2.0)
_GAUSSIAN_POINTS = {
    1: [(0.0,), (0.3,), (-0.7,)],
    2: [(0.0, 0.0), (0.3, 0.2), (0.5, -0.4)],
    3: [(0.0, 0.0, 0.0), (0.3, 0.2, -0.1)],
}


def _pairing_fields(d: int):
    """Compactly supported f against bounded g; d = 1 includes a bump on [-2, 2]."""
    fs = [bump(d, 2.0), gaussian(d)] if d == 1 else [gaussian(d), gaussian(d, 2.0)]
    gs = [const(d), cosine(d), gaussian(d, 0.5), monomial(d, 2, 1), exponential(d, *([0.5] * d))]
    return [(f, g) for f in fs for g in gs]


def _intertwining_rows(lab, row) -> list[CheckRow]:
    ctx = lab.ctx
    tol = lab.tolerance_settings
    rng = lab.rng()
    d = ctx.dim
    rows = []

    points = rng.uniform(-2.0, 2.0, size=(20, d))
    ones = vk_many(ctx, const(d), points).value
    rows.append(row("01-vk-one", "V_k(1) = 1", *worst_pair(ones, np.ones(len(points))), tol.intertwining))

    x = np.zeros(d)
    x[0] = 1.0
    linear = vk_apply(ctx, monomial(d, 1, 1), x)
    rows.append(row("02-vk-linear", "V_k(y_1)(x) = x_1 / (2α_1 + 1)", linear, 1 / (2 * ctx.alphas[0] + 1), 1e-10))

    steps = np.linspace(0.25, 2.0, 5)
    ux = np.array([1.0, 0.6, -0.35][:d]) / np.linalg.norm([1.0, 0.6, -0.35][:d])
    uz = np.array([0.8, -0.5, 0.3][:d]) / np.linalg.norm([0.8, -0.5, 0.3][:d])
    xs = np.array([s * ux for s in steps])
    lhs, rhs = [], []
    for t in lab.progress(steps, desc="V_k(e^{<·,z>})"):
        z = t * uz
        lhs.append(vk_many(ctx, exponential(d, *z), xs).value)
        rhs.append(dunkl_kernel_product(ctx, xs, z))
    rows.append(row("03-vk-kernel", "V_k(e^{<·, z>})(x) = K(x, z)", *worst_pair(np.array(lhs), np.array(rhs)), tol.intertwining))

    origin = np.zeros(d)
    rows.append(row("04-vk-origin", "V_k(g)(0) = g(0)", vk_apply(ctx, cosine(d), origin), 1.0, 0.0, mode="abs"))
    n = lab.samples("random_samples", 1000)
    per_polynomial = 20
    ratios = []
    for _ in lab.progress(range(max(1, n // per_polynomial)), desc="contraction"):
        points = rng.uniform(-2.0, 2.0, size=(per_polynomial, d))
        # degree <= 3 per axis is exact with 4 Jacobi nodes
        ratios.append(contraction_ratios(ctx, random_polynomial(rng, d), points, order=4))
    worst = float(np.max(np.concatenate(ratios)))
    rows.append(row("05-contraction", "|V_k(g)(x)| <= sup_{|y| <= |x|} |g(y)|", worst, 1.0, tol.contraction, mode="le"))

    if d == 1:
        y = np.array([0.6])
        rows.append(
            row(
                "06-support-touching",
                "𝒦°(x, y) > 0 just outside |x| = |y|",
                0.0,
                weighted_density_product(ctx, 1.001 * y, y),
                0.0,
                mode="lt",
            )
        )
    return rows


def run(lab) -> list[CheckRow]:
    require_z2(lab, SUITE)
    require_positive(lab, SUITE)
    ctx = lab.ctx
    tol = lab.tolerance_settings
    row = checker(SUITE)
    d = ctx.dim
    rows = _intertwining_rows(lab, row)

    if d > 2:
        skip(SUITE, "duality pairings", "the paired quadrature is limited to d <= 2")
    else:
        for i, (f, g) in enumerate(lab.progress(_pairing_fields(d), desc="duality"), start=1):
            dual, direct = duality_pair(ctx, f, g)
            rows.append(row(f"10-pairing-{i:02d}", f"∫ tV_k({f.name}) {g.name} = ∫ V_k({g.name}) {f.name} ω_k", dual, direct, tol.duality))

    for a in _GAUSSIAN_PARAMETERS:
        for j, y in enumerate(_GAUSSIAN_POINTS[d], start=1):
            value = tvk_apply(ctx, gaussian(d, a), y)
            reference = tvk_gaussian_reference(ctx, a, y)
            rows.append(
                row(f"20-gaussian-{a:g}-{j}", f"tV_k(e^{{-{a:g}|x|²}})(y) = e^{{-a|y|²}} / (a^γ π^{{d/2}} c_k)", value, reference, tol.gaussian)
            )

    y = 0.3 * np.ones(d)
    radial = [gaussian(d, 0.5), gaussian(d), gaussian(d, 2.0)]
    # bumps need orders beyond the d = 3 tensor budget
    radial += [bump(d, 1.0), bump(d, 2.0)] if d <= 2 else [gaussian(d, 4.0)]
    for f in radial:
        rows.append(row(f"30-radial-{f.name}", f"radial tV_k({f.name}) = tV_k({f.name})", tvk_radial(ctx, f, y), tvk_apply(ctx, f, y), tol.radial))

    scaled, base = homogeneity_check(ctx, gaussian(d), 2.0, y)
    rows.append(row("40-homogeneity", "tV_k(f)(ry) = r^{2γ} tV_k(f_r)(y)", scaled, base, tol.intertwining))
    return rows
