"""Generalized translations: the rank-one integral formula and the radial formula."""

import numpy as np

from .._applications import translate_radial, translate_rank1
from .._kernel import dunkl_kernel_rank1
from ..base import CheckRow, ScalarField
from ..catalog import const, exponential, gaussian, identity, monomial, norm2
from ._shared import checker, random_regular, require_positive, require_z2, worst_pair

SUITE = "translate"


def _rank1_kernel_field(gamma: float, z: float) -> ScalarField:
    return ScalarField(
        func=lambda p: np.real(dunkl_kernel_rank1(gamma, p[..., 0], z)),
        dim=1,
        name=f"K(·, {z:g})",
    )


def _rank1_rows(lab, row) -> list[CheckRow]:
    gamma = float(lab.ctx.alphas[0])
    tol = lab.tolerance_settings.translation
    rng = lab.rng()
    n = lab.samples("translation_cases", 20)
    f, f_reflected = exponential(1, 0.7), exponential(1, -0.7)
    even = gaussian(1)
    xs, ys = rng.uniform(-2.0, 2.0, size=n), rng.uniform(-2.0, 2.0, size=n)
    zs = rng.uniform(-1.5, 1.5, size=n)

    pairs: dict[str, tuple[list, list]] = {
        key: ([], []) for key in ("origin", "zero", "one", "swap", "kernel", "linear", "square", "reflect", "even")
    }

    def add(key: str, lhs, rhs):
        pairs[key][0].append(lhs)
        pairs[key][1].append(rhs)

    for x, y, z in lab.progress(list(zip(xs, ys, zs)), desc="rank-one translations"):
        value = translate_rank1(gamma, f, x, y).value
        add("origin", translate_rank1(gamma, f, x, 0.0).value, f(np.array([x]))[0])
        add("zero", translate_rank1(gamma, f, 0.0, y).value, f(np.array([y]))[0])
        add("one", translate_rank1(gamma, const(1), x, y).value, 1.0)
        add("swap", value, translate_rank1(gamma, f, y, x).value)
        add(
            "kernel",
            translate_rank1(gamma, _rank1_kernel_field(gamma, z), x, y).value,
            np.real(dunkl_kernel_rank1(gamma, x, z) * dunkl_kernel_rank1(gamma, y, z)),
        )
        add("linear", translate_rank1(gamma, identity(1), x, y).value, x + y)
        add("square", translate_rank1(gamma, monomial(1, 2, 1), x, y).value, x * x + y * y + 2 * x * y / (2 * gamma + 1))
        add("reflect", translate_rank1(gamma, f, -x, -y).value, translate_rank1(gamma, f_reflected, x, y).value)
        add("even", translate_rank1(gamma, even, x, y).value, translate_rank1(gamma, even, -x, -y).value)

    def worst(key: str):
        return worst_pair(np.array(pairs[key][0]), np.array(pairs[key][1]))

    return [
        row("01-rank1-origin", f"τ_x f(0) = f(x) for f = {f.name}", *worst("origin"), tol),
        row("02-rank1-zero", f"τ_0 f(y) = f(y) for f = {f.name}", *worst("zero"), tol),
        row("03-rank1-one", "τ_x 1 = 1", *worst("one"), tol),
        row("04-rank1-swap", f"τ_x f(y) = τ_y f(x) for f = {f.name}", *worst("swap"), tol),
        row("05-rank1-kernel", "τ_x K(·, z)(y) = K(x, z) K(y, z)", *worst("kernel"), tol),
        row("06-rank1-linear", "τ_x u(y) = x + y", *worst("linear"), tol),
        row("07-rank1-square", "τ_x u²(y) = x² + y² + 2xy / (2γ + 1)", *worst("square"), tol),
        row("08-rank1-reflect", "τ_{-x} f(-y) = τ_x f(-·)(y)", *worst("reflect"), tol),
        row("09-rank1-even", "τ_x f(y) = τ_{-x} f(-y) for even f", *worst("even"), tol),
    ]


def run(lab) -> list[CheckRow]:
    require_z2(lab, SUITE)
    require_positive(lab, SUITE)
    ctx = lab.ctx
    tol = lab.tolerance_settings.translation
    row = checker(SUITE)
    rng = lab.rng()
    d = ctx.dim
    rows = _rank1_rows(lab, row)

    f, square = gaussian(d), norm2(d)
    cases = random_regular(rng, 5, d, high=1.5)
    partners = random_regular(rng, 5, d, high=1.5)
    origin, ones, swapped, forms, squares = ([], []), ([], []), ([], []), ([], []), ([], [])
    for x, y in lab.progress(list(zip(cases, partners)), desc="radial translations"):
        origin[0].append(translate_radial(ctx, f, x, np.zeros(d)).value)
        origin[1].append(f(x))
        ones[0].append(translate_radial(ctx, const(d), x, y).value)
        ones[1].append(1.0)
        tensor = translate_radial(ctx, f, x, y).value
        swapped[0].append(tensor)
        swapped[1].append(translate_radial(ctx, f, y, x).value)
        forms[0].append(translate_radial(ctx, f, x, y, density_form=True).value)
        forms[1].append(tensor)
        squares[0].append(translate_radial(ctx, square, x, y).value)
        squares[1].append(x @ x + y @ y + 2 * np.sum(x * y / (2 * ctx.alphas + 1)))

    rows += [
        row("10-radial-origin", "τ_x F(|·|)(0) = F(|x|)", *worst_pair(np.array(origin[0]), np.array(origin[1])), tol),
        row("11-radial-one", "τ_x 1 = 1", *worst_pair(np.array(ones[0]), np.array(ones[1])), tol),
        row("12-radial-swap", "τ_x f(y) = τ_y f(x) for radial f", *worst_pair(np.array(swapped[0]), np.array(swapped[1])), tol),
        row("13-radial-density", "density form of τ_x agrees with the tensor form", *worst_pair(np.array(forms[0]), np.array(forms[1])), tol),
        row(
            "14-radial-square",
            "τ_x |·|²(y) = |x|² + |y|² + 2 Σ x_l y_l / (2α_l + 1)",
            *worst_pair(np.array(squares[0]), np.array(squares[1])),
            tol,
        ),
    ]
    if d == 1:
        x, y = float(cases[0][0]), float(partners[0][0])
        rows.append(
            row(
                "15-radial-rank1",
                "radial and rank-one translations agree on d = 1",
                translate_radial(ctx, f, [x], [y]),
                translate_rank1(float(ctx.alphas[0]), f, x, y),
                tol,
            )
        )
    return rows
