"""Special functions and quadrature rules shared by every other module."""

from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np
from scipy import integrate, special

from ._utils import logger
from .base import (
    AccuracyError,
    DomainError,
    DomainTag,
    QuadratureRule,
    UnsupportedDimensionError,
)

SERIES_CUTOFF = 8.0
_MAX_SERIES_TERMS = 400


def gamma_fn(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise DomainError(f"gamma_fn expects positive finite arguments, got {x}")
    value = special.gamma(x)
    return float(value) if value.ndim == 0 else value


def sphere_area(d: int) -> float:
    return float(2 * np.pi ** (d / 2) / special.gamma(d / 2))


def ball_volume(d: int, r) -> Union[float, np.ndarray]:
    return np.pi ** (d / 2) * np.asarray(r, dtype=float) ** d / special.gamma(d / 2 + 1)


# Bessel ------------------------------------------------------------------------------
def _bessel_series(alpha: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Σ (-1)^n (z/2)^{2n} Γ(α+1) / (n! Γ(α+n+1)) with compensated summation."""
    q = -(z / 2) ** 2
    term = np.ones_like(z)
    total = np.ones_like(z)
    carry = np.zeros_like(z)
    for n in range(1, _MAX_SERIES_TERMS):
        term = term * q / (n * (alpha + n))
        y = term - carry
        t = total + y
        carry = (t - total) - y
        total = t
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)) and n > 2:
            break
    return total


def normalized_bessel(alpha, z, series_cutoff: float = SERIES_CUTOFF):
    """j_α(z) = Γ(α+1) (z/2)^{-α} J_α(z), entire in z, with j_α(0) = 1.

    Broadcasts over `alpha` and `z`; the series is used for |z| <= series_cutoff and
    scipy's complex Bessel function beyond.
    """
    alpha, z = np.broadcast_arrays(np.asarray(alpha, dtype=float), np.asarray(z, dtype=complex))
    if np.any(alpha < -0.5):
        raise DomainError(f"normalized_bessel requires alpha >= -1/2, got {alpha.min()}")
    if not np.all(np.isfinite(z)):
        raise DomainError("normalized_bessel requires finite arguments")
    scalar = z.ndim == 0
    alpha, z = np.atleast_1d(alpha), np.atleast_1d(z)
    # j_α is even, so fold onto the right half plane where the principal branch is smooth
    z = np.where(z.real < 0, -z, z)
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) <= series_cutoff
    if np.any(small):
        out[small] = _bessel_series(alpha[small], z[small])
    if np.any(~small):
        a, w = alpha[~small], z[~small]
        out[~small] = special.gamma(a + 1) * (w / 2) ** (-a) * special.jv(a, w)
    return complex(out[0]) if scalar else out


# Gauss–Jacobi ------------------------------------------------------------------------
@lru_cache(maxsize=256)
def _jacobi_nodes(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    if a == 0 and b == 0:
        nodes, weights = special.roots_legendre(n)
    else:
        nodes, weights = special.roots_jacobi(n, a, b)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi_rule(n: int, a: float, b: float) -> QuadratureRule:
    """n-point rule on (-1, 1) for the weight (1-t)^a (1+t)^b."""
    if n < 1:
        raise DomainError(f"gauss_jacobi_rule needs n >= 1, got {n}")
    if a <= -1 or b <= -1:
        raise DomainError(f"non-integrable Jacobi exponents a={a}, b={b}")
    nodes, weights = _jacobi_nodes(int(n), float(a), float(b))
    return QuadratureRule(
        nodes=nodes, weights=weights, domain_tag=DomainTag.jacobi_interval, params=(("a", a), ("b", b))
    )


def jacobi_on_interval(n: int, lo, hi, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ∫_lo^hi g(x) (hi-x)^a (x-lo)^b dx.

    `lo` and `hi` may be arrays of equal shape; the result then has a trailing axis of
    length n per interval.
    """
    t, w = _jacobi_nodes(int(n), float(a), float(b))
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    half = (hi - lo) / 2
    nodes = (lo + half)[..., None] + half[..., None] * t
    weights = (half ** (a + b + 1))[..., None] * w
    return nodes, weights


def legendre_on_interval(n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    return jacobi_on_interval(n, lo, hi, 0.0, 0.0)


def halfline_gaussian_rule(n: int, p: float) -> QuadratureRule:
    """n-point rule on (0, ∞) for the weight r^p e^{-r²}."""
    if n < 1:
        raise DomainError(f"halfline_gaussian_rule needs n >= 1, got {n}")
    if p <= -1:
        raise DomainError(f"r^p is not integrable at 0 for p={p}")
    # s = r²: r^p e^{-r²} dr = ½ s^{(p-1)/2} e^{-s} ds
    s, w = special.roots_genlaguerre(int(n), (p - 1) / 2)
    return QuadratureRule(
        nodes=np.sqrt(s), weights=w / 2, domain_tag=DomainTag.radial_halfline, params=(("p", p),)
    )


# Sphere rules ------------------------------------------------------------------------
def _circle(n: int) -> tuple[np.ndarray, np.ndarray]:
    # half-step offset keeps nodes off the coordinate axes
    theta = 2 * np.pi * (np.arange(n) + 0.5) / n
    return theta, np.full(n, 2 * np.pi / n)


def sphere_rule(d: int, n: int) -> QuadratureRule:
    """Rule on S^{d-1} for the standard (unnormalized) surface measure."""
    if n < 1:
        raise DomainError(f"sphere_rule needs n >= 1, got {n}")
    if d == 1:
        nodes = np.array([[1.0], [-1.0]])
        weights = np.ones(2)
    elif d == 2:
        theta, weights = _circle(n)
        nodes = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    elif d == 3:
        u, wu = _jacobi_nodes(int(n), 0.0, 0.0)
        phi, wphi = _circle(2 * n)
        s = np.sqrt(1 - u**2)
        nodes = np.stack(
            [
                np.outer(s, np.cos(phi)).ravel(),
                np.outer(s, np.sin(phi)).ravel(),
                np.repeat(u, len(phi)),
            ],
            axis=-1,
        )
        weights = np.outer(wu, wphi).ravel()
    else:
        raise UnsupportedDimensionError(f"sphere rules exist for d in {{1, 2, 3}}, got d={d}")
    return QuadratureRule(nodes=nodes, weights=weights, domain_tag=DomainTag.sphere, params=(("d", d),))


def circle_arc_rule(
    n: int, walls: Sequence[float], exponents: Sequence[float], weight: Callable[[np.ndarray], np.ndarray]
) -> tuple[np.ndarray, np.ndarray]:
    """Angles and weights for ∫_0^{2π} g(θ) weight(θ) dθ.

    `walls` are the angles where `weight` vanishes like |θ - wall|^{exponent}. Each arc
    between consecutive walls gets a Gauss–Jacobi rule matched to its two end exponents,
    so the remaining factor is smooth.
    """
    if len(walls) == 0:
        theta, w = _circle(n)
        return theta, w * weight(theta)
    order = np.argsort(np.mod(walls, 2 * np.pi))
    walls = np.mod(np.asarray(walls, dtype=float), 2 * np.pi)[order]
    exponents = np.asarray(exponents, dtype=float)[order]
    thetas, weights = [], []
    for i in range(len(walls)):
        lo, b = walls[i], exponents[i]
        if i + 1 < len(walls):
            hi, a = walls[i + 1], exponents[i + 1]
        else:
            hi, a = walls[0] + 2 * np.pi, exponents[0]
        theta, w = jacobi_on_interval(n, lo, hi, a, b)
        singular = (hi - theta) ** a * (theta - lo) ** b
        thetas.append(theta)
        weights.append(w * weight(theta) / singular)
    return np.concatenate(thetas), np.concatenate(weights)


# Adaptive one-dimensional integration ------------------------------------------------
def quad_with_breakpoints(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    points: Sequence[float] = (),
    epsabs: float = 1e-13,
    epsrel: float = 1e-10,
    limit: int = 200,
) -> tuple[float, float]:
    """scipy's adaptive quadrature, split at the given interior breakpoints."""
    if hi <= lo:
        return 0.0, 0.0
    inner = sorted({float(p) for p in points if lo < p < hi})
    edges = [lo, *inner, hi]
    total, error = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, err = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
        total += value
        error += err
    return total, error


def check_quad_error(value: float, error: float, tol: float, label: str) -> float:
    if error > tol * max(1.0, abs(value)):
        logger.warning(f"{label}: adaptive quadrature error {error:.3e} above {tol:.1e}")
        raise AccuracyError(f"{label} did not reach {tol:.1e}", estimate=value, error=error)
    return value
