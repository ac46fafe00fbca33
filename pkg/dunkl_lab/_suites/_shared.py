import itertools
from functools import partial

import numpy as np

from .._report import check
from .._utils import logger
from ..base import DomainError, ScalarField, UnsupportedGroupError
from ..catalog import polynomial


def checker(suite: str):
    """`check` with the suite name bound."""
    return partial(check, suite)


def require_z2(lab, suite: str):
    if not lab.ctx.is_z2:
        raise UnsupportedGroupError(f"the {suite} suite needs a Z2^d context, got {lab.ctx.root_system.kind}")


def require_positive(lab, suite: str):
    if not lab.ctx.multiplicity.is_positive():
        raise DomainError(f"the {suite} suite needs strictly positive multiplicities")


def skip(suite: str, what: str, reason: str):
    logger.info(f"[{suite}] skipping {what}: {reason}")


def worst_pair(lhs: np.ndarray, rhs: np.ndarray) -> tuple[complex, complex]:
    """The (lhs, rhs) pair with the largest relative deviation."""
    lhs, rhs = np.asarray(lhs).ravel(), np.asarray(rhs).ravel()
    deviation = np.abs(lhs - rhs) / np.maximum(np.abs(rhs), np.finfo(float).tiny)
    i = int(np.argmax(deviation))
    return lhs[i], rhs[i]


def worst_abs(lhs: np.ndarray, rhs: np.ndarray) -> tuple[complex, complex]:
    lhs, rhs = np.asarray(lhs).ravel(), np.asarray(rhs).ravel()
    i = int(np.argmax(np.abs(lhs - rhs)))
    return lhs[i], rhs[i]


def random_regular(rng: np.random.Generator, n: int, d: int, low: float = 0.2, high: float = 2.0) -> np.ndarray:
    """Points with every |x_l| in [low, high] and random signs."""
    return rng.uniform(low, high, size=(n, d)) * rng.choice([-1.0, 1.0], size=(n, d))


def random_polynomial(rng: np.random.Generator, d: int, degree: int = 3, terms: int = 4) -> ScalarField:
    """Mixed-sign normal coefficients on distinct random monomials of total degree <= `degree`."""
    exponents = [p for p in itertools.product(range(degree + 1), repeat=d) if sum(p) <= degree]
    chosen = rng.choice(len(exponents), size=min(terms, len(exponents)), replace=False)
    return polynomial(d, [(float(rng.normal()), exponents[i]) for i in chosen])
