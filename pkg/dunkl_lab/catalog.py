"""
Named test functions used by the verification suites and the command line.

A catalog entry is spelled like a call, e.g. `gaussian(2)`, `bump(1.5)`, `monomial(2,1)`, `norm2`.
Coordinate indices in entries are 1-based.
"""

import re
from typing import Callable, Sequence

import numpy as np

from ._utils import parse_value
from .base import DomainError, ScalarField

# e^{-64} is below double-precision resolution of the integrals we compare
GAUSSIAN_TAIL = 64.0

FIELDS: dict[str, Callable[..., ScalarField]] = {}


def _norm2(x: np.ndarray) -> np.ndarray:
    return np.sum(x * x, axis=-1)


def gaussian(dim: int, a: float = 1.0) -> ScalarField:
    if a <= 0:
        raise DomainError(f"gaussian(a) needs a > 0, got {a}")
    return ScalarField(
        func=lambda x: np.exp(-a * _norm2(x)),
        dim=dim,
        name=f"gaussian({a:g})",
        gradient=lambda x: -2 * a * x * np.exp(-a * _norm2(x))[:, None],
        radial=True,
        profile=lambda r: np.exp(-a * np.asarray(r) ** 2),
        support_radius=float(np.sqrt(GAUSSIAN_TAIL / a)),
        even=True,
    )


def _bump_profile(q: np.ndarray) -> np.ndarray:
    inside = q < 1
    safe = np.where(inside, q, 0.0)
    return np.where(inside, np.exp(-1 / (1 - safe)), 0.0)


def bump(dim: int, R: float = 1.0) -> ScalarField:
    """exp(-1 / (1 - |x|²/R²)) on the open ball of radius R."""
    if R <= 0:
        raise DomainError(f"bump(R) needs R > 0, got {R}")

    def grad(x):
        q = _norm2(x) / R**2
        inside = q < 1
        safe = np.where(inside, 1 - q, 1.0)
        factor = np.where(inside, -2 * _bump_profile(q) / (R**2 * safe**2), 0.0)
        return factor[:, None] * x

    return ScalarField(
        func=lambda x: _bump_profile(_norm2(x) / R**2),
        dim=dim,
        name=f"bump({R:g})",
        gradient=grad,
        radial=True,
        profile=lambda r: _bump_profile(np.asarray(r) ** 2 / R**2),
        support_radius=float(R),
        even=True,
    )


def monomial(dim: int, k: int = 1, j: int = 1) -> ScalarField:
    """x_j^k."""
    if not 1 <= j <= dim or k < 0 or int(k) != k:
        raise DomainError(f"monomial(k, j) needs k >= 0 and 1 <= j <= {dim}, got k={k}, j={j}")
    k, axis = int(k), j - 1

    def grad(x):
        g = np.zeros_like(x)
        g[:, axis] = k * x[:, axis] ** (k - 1) if k > 0 else 0.0
        return g

    return ScalarField(
        func=lambda x: x[..., axis] ** k,
        dim=dim,
        name=f"monomial({k},{j})",
        gradient=grad,
        radial=(k == 0),
        profile=(lambda r: np.ones_like(np.asarray(r, dtype=float))) if k == 0 else None,
        even=(k % 2 == 0),
    )


def norm2(dim: int) -> ScalarField:
    """|x|²."""
    return ScalarField(
        func=_norm2,
        dim=dim,
        name="norm2",
        gradient=lambda x: 2 * x,
        radial=True,
        profile=lambda r: np.asarray(r, dtype=float) ** 2,
        even=True,
    )


def cosine(dim: int) -> ScalarField:
    return ScalarField(
        func=lambda x: np.cos(np.sum(x, axis=-1)),
        dim=dim,
        name="cosine",
        gradient=lambda x: -np.sin(np.sum(x, axis=-1))[:, None] * np.ones(dim),
        even=True,
    )


def identity(dim: int) -> ScalarField:
    return monomial(dim, 1, 1)


def const(dim: int, c: float = 1.0) -> ScalarField:
    return ScalarField(
        func=lambda x: np.full(np.shape(x)[:-1], float(c)),
        dim=dim,
        name=f"const({c:g})",
        gradient=lambda x: np.zeros_like(x),
        radial=True,
        profile=lambda r: np.full(np.shape(r), float(c)),
        even=True,
    )


def exponential(dim: int, *z) -> ScalarField:
    """e^{<x, z>}; complex entries allowed."""
    z = np.asarray(z if z else np.ones(dim), dtype=complex)
    if z.shape != (dim,):
        raise DomainError(f"exponential needs {dim} frequencies, got {len(z)}")
    if not np.any(z.imag):
        z = z.real
    label = ",".join(f"{v:g}" for v in np.atleast_1d(z))
    return ScalarField(
        func=lambda x: np.exp(x @ z),
        dim=dim,
        name=f"exponential({label})",
        gradient=lambda x: np.exp(x @ z)[:, None] * z,
    )


def polynomial(dim: int, terms: Sequence[tuple[float, Sequence[int]]]) -> ScalarField:
    """Σ c x^p over (coefficient, exponent tuple) pairs."""
    if not terms:
        raise DomainError("polynomial needs at least one term")
    coefficients = np.array([c for c, _ in terms], dtype=float)
    powers = np.array([p for _, p in terms], dtype=int)
    if powers.shape != (len(terms), dim) or np.any(powers < 0):
        raise DomainError(f"polynomial exponents must be {dim} nonnegative integers per term")
    degrees = powers.sum(axis=1)

    def grad(x):
        # x_j^{p_j - 1} with p_j = 0 is multiplied by p_j = 0
        lowered = np.maximum(powers - np.eye(dim, dtype=int)[:, None, :], 0)  # (d, m, d)
        factors = np.prod(x[:, None, None, :] ** lowered, axis=-1)  # (N, d, m)
        return (factors * powers.T[None]) @ coefficients

    return ScalarField(
        func=lambda x: np.prod(x[..., None, :] ** powers, axis=-1) @ coefficients,
        dim=dim,
        name=f"polynomial({len(terms)} terms, degree {int(degrees.max())})",
        gradient=grad,
        even=bool(np.all(degrees % 2 == 0)),
    )


def product(f: ScalarField, g: ScalarField) -> ScalarField:
    """Pointwise product; keeps the smaller support radius."""
    supports = [s for s in (f.support_radius, g.support_radius) if s is not None]
    gradient = None
    if f.gradient is not None and g.gradient is not None:
        gradient = lambda x: f.gradient(x) * g(x)[:, None] + g.gradient(x) * f(x)[:, None]  # noqa: E731
    return ScalarField(
        func=lambda x: f(x) * g(x),
        dim=f.dim,
        name=f"{f.name}*{g.name}",
        gradient=gradient,
        support_radius=min(supports) if supports else None,
        even=f.even and g.even,
        smoothness_hint="C1" if "C1" in (f.smoothness_hint, g.smoothness_hint) else "smooth",
    )


FIELDS["gaussian"] = gaussian
FIELDS["bump"] = bump
FIELDS["monomial"] = monomial
FIELDS["cosine"] = cosine
FIELDS["norm2"] = norm2
FIELDS["id"] = identity
FIELDS["const"] = const
FIELDS["exponential"] = exponential

_ENTRY = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$", re.IGNORECASE)


def make_field(entry: str, dim: int) -> ScalarField:
    """Build a ScalarField from a catalog entry such as "bump(2)"."""
    match = _ENTRY.match(entry)
    if match is None or match.group(1).lower() not in FIELDS:
        raise DomainError(f"unknown function {entry!r}; the catalog has {sorted(FIELDS)}")
    name, raw = match.group(1).lower(), match.group(2)
    args = [parse_value(a) for a in raw.split(",") if a.strip()] if raw else []
    try:
        return FIELDS[name](dim, *args)
    except TypeError as e:
        raise DomainError(f"bad arguments for {name}: {raw!r}") from e
