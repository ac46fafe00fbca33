"""Shell maxima of the weighted kernel and the weighted J_W on growing spheres."""

import numpy as np

from .._applications import SHELL_RADII, decay_scan
from ..base import CheckRow
from ._shared import checker, random_regular, require_positive, require_z2

SUITE = "decay"


def _scan_rows(row, tag: str, label: str, values: np.ndarray, ratio_tol: float) -> list[CheckRow]:
    return [
        row(f"{tag}-decreasing", f"shell maxima of {label} strictly decrease", float(np.max(np.diff(values))), 0.0, 0.0, mode="lt"),
        row(
            f"{tag}-ratio",
            f"{label} at |z| = {SHELL_RADII[-1]:g} over |z| = {SHELL_RADII[0]:g}",
            float(values[-1] / values[0]),
            ratio_tol,
            0.0,
            mode="lt",
        ),
    ]


def run(lab) -> list[CheckRow]:
    require_z2(lab, SUITE)
    require_positive(lab, SUITE)
    ctx = lab.ctx
    ratio = lab.tolerance_settings.decay_ratio
    row = checker(SUITE)
    d = ctx.dim
    samples = lab.samples("samples_per_shell", 64)
    rows: list[CheckRow] = []

    points = [np.ones(d), random_regular(lab.rng(), 1, d, low=0.5)[0]]
    for i, x in enumerate(lab.progress(points, desc="decay scans"), start=1):
        scan = decay_scan(ctx, x, samples_per_shell=samples)
        rows += _scan_rows(row, f"{i:02d}-kernel", "|ω_k(x) K(-ix, z)|", scan.values, ratio)
        rows += _scan_rows(row, f"{i:02d}-bessel", "|ω_k(x) J_W(-ix, z)|", scan.bessel_values, ratio)
        rows += _scan_rows(row, f"{i:02d}-unweighted", "|K(-ix, z)|", scan.unweighted, ratio)
        rows += _scan_rows(row, f"{i:02d}-bessel-unweighted", "|J_W(-ix, z)|", scan.bessel_unweighted, ratio)

    x = np.ones(d)
    x[0] = 0.0
    scan = decay_scan(ctx, x, samples_per_shell=samples)
    rows.append(row("10-singular-kernel", "ω_k(x) K(-ix, z) = 0 when some x_l = 0", float(np.max(scan.values)), 0.0, 0.0, mode="abs"))
    rows.append(row("11-singular-bessel", "ω_k(x) J_W(-ix, z) = 0 when some x_l = 0", float(np.max(scan.bessel_values)), 0.0, 0.0, mode="abs"))
    return rows
