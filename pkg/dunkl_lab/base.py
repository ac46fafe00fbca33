from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Literal, Optional, Union

import numpy as np


# Errors ------------------------------------------------------------------------------
class DunklLabError(Exception):
    """Base class of every error raised by the package."""


class DomainError(DunklLabError, ValueError):
    pass


class UnsupportedDimensionError(DomainError):
    pass


class RegularPointError(DomainError):
    """A density was requested at a point lying on a reflection hyperplane."""


class SingularPointError(DomainError):
    pass


class UnsupportedGroupError(DunklLabError):
    pass


class NotARootSystemError(DunklLabError):
    pass


class ContractError(DunklLabError):
    """An input is missing metadata the operation relies on (e.g. a support radius)."""


class AccuracyError(DunklLabError):
    def __init__(self, message: str, estimate: float = float("nan"), error: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


# Settings ----------------------------------------------------------------------------
@dataclass(frozen=True)
class QuadratureSettings:
    order: int = 64  # nodes per axis on the first pass
    max_order: int = 512
    refine_rtol: float = 1e-9
    refine_atol: float = 1e-14
    radial_cutoff: float = 10.0  # truncation radius when no support radius is declared
    tail_tol: float = 1e-12
    series_cutoff: float = 8.0
    group_bound: int = 10_000
    max_tensor_nodes: int = 1 << 21


@dataclass
class ToleranceSettings:
    constants: float = 1e-8
    kernel: float = 1e-8
    kernel_bound: float = 1e-10
    eigen: float = 1e-6
    antisymmetry: float = 1e-7
    intertwining: float = 1e-8
    contraction: float = 1e-6
    duality: float = 1e-7
    gaussian: float = 1e-6
    radial: float = 1e-6
    density_ratio: float = 0.02
    normalization: float = 1e-9
    equivariance: float = 1e-12
    spherical_density: float = 1e-4
    spherical_mean: float = 1e-6
    spherical_mean_gaussian: float = 1e-5
    translation: float = 1e-7
    decay_ratio: float = 0.25


# Quadrature --------------------------------------------------------------------------
class DomainTag(str, Enum):
    jacobi_interval = "jacobi_interval"
    sphere = "sphere"
    radial_halfline = "radial_halfline"
    product = "product"


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray  # (n,) for interval rules, (n, d) otherwise
    weights: np.ndarray
    domain_tag: DomainTag
    params: tuple = ()

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise DomainError(f"{self.domain_tag.value} rule has nonpositive weights")

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    def integrate(self, func: Callable[[np.ndarray], np.ndarray]):
        return np.dot(self.weights, func(self.nodes))


@dataclass(frozen=True)
class Estimate:
    value: Union[float, complex]
    error: float
    order: int


# Algebraic types ---------------------------------------------------------------------
@dataclass(frozen=True)
class RootSystem:
    roots: np.ndarray  # (m, d), every row with squared norm 2
    positive_roots: np.ndarray
    group: np.ndarray  # (|W|, d, d)
    kind: Literal["z2", "dihedral", "explicit"] = "explicit"

    @property
    def dim(self) -> int:
        return self.roots.shape[1]

    @property
    def order(self) -> int:
        return self.group.shape[0]


@dataclass(frozen=True)
class Multiplicity:
    orbit_values: tuple[float, ...]
    positive_root_values: np.ndarray  # k(α) for each α in R₊, same order as RootSystem.positive_roots
    orbit_of_positive_root: tuple[int, ...] = ()

    @property
    def values(self) -> np.ndarray:
        return self.positive_root_values

    def is_positive(self) -> bool:
        return bool(np.all(self.positive_root_values > 0))


@dataclass(frozen=True)
class WeightContext:
    root_system: RootSystem
    multiplicity: Multiplicity
    gamma: float
    mehta: float
    sphere_mass: float
    # "product" is ∏|x_l|^{2α_l} (Z2^d only), "root" is ∏|<α,x>|^{2k(α)} with |α|² = 2
    convention: Literal["product", "root"] = "root"
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)

    @property
    def dim(self) -> int:
        return self.root_system.dim

    @property
    def is_z2(self) -> bool:
        return self.root_system.kind == "z2"

    @property
    def alphas(self) -> np.ndarray:
        """Per-axis multiplicities of a Z2^d context, ordered by coordinate."""
        if not self.is_z2:
            raise UnsupportedGroupError("per-axis multiplicities exist only for Z2^d")
        axes = np.argmax(np.abs(self.root_system.positive_roots), axis=1)
        alphas = np.empty(self.dim)
        alphas[axes] = self.multiplicity.positive_root_values
        return alphas


# Functions ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ScalarField:
    """A vectorized map (N, d) -> (N,), with optional metadata."""

    func: Callable[[np.ndarray], np.ndarray]
    dim: int
    name: str = "field"
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None  # (N, d) -> (N, d)
    radial: bool = False
    profile: Optional[Callable[[np.ndarray], np.ndarray]] = None  # F with f(x) = F(|x|)
    support_radius: Optional[float] = None
    smoothness_hint: Literal["C1", "smooth"] = "smooth"
    even: bool = False

    def __call__(self, points):
        """Evaluate at a single point (d,) / scalar, or at a batch (..., d).

        For one-dimensional fields a 1-D array is read as a batch of points.
        """
        points = np.asarray(points)
        if points.ndim == 0:
            return self.func(points.reshape(1, 1))[0]
        if points.ndim == 1:
            if self.dim == 1:
                return self.func(points.reshape(-1, 1))
            return self.func(points.reshape(1, -1))[0]
        lead = points.shape[:-1]
        return self.func(points.reshape(-1, self.dim)).reshape(lead)


@dataclass(frozen=True)
class BallRatioSeries:
    center: np.ndarray
    radii: np.ndarray  # strictly decreasing
    ratios: np.ndarray
    sup_ratios: np.ndarray  # running sup over finer radii, nonincreasing
    limit_estimate: float
    target: Optional[float] = None


@dataclass(frozen=True)
class DecayScan:
    x: np.ndarray
    radii: np.ndarray  # strictly increasing
    values: np.ndarray  # weighted shell maxima of |ω_k(x) K(-ix, z)|
    unweighted: Optional[np.ndarray] = None  # shell maxima of |K(-ix, z)|, x regular only
    bessel_values: Optional[np.ndarray] = None  # weighted shell maxima of |ω_k(x) J_W(-ix, z)|
    bessel_unweighted: Optional[np.ndarray] = None


@dataclass(frozen=True)
class CheckRow:
    suite: str
    check_id: str
    identity: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
