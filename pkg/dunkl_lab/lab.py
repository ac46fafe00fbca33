import sys
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import yaml
from tqdm import tqdm

from ._applications import translate_radial, translate_rank1
from ._intertwine import tvk_apply, tvk_gaussian_reference, vk_apply
from ._kernel import dunkl_kernel_product, dunkl_kernel_rank1, generalized_bessel, kernel_via_laplace
from ._report import summarize
from ._rootsys import build_context, parse_group
from ._utils import logger, timer
from .base import (
    CheckRow,
    DomainError,
    Estimate,
    QuadratureSettings,
    ScalarField,
    ToleranceSettings,
    WeightContext,
)
from .catalog import make_field


@dataclass
class DunklLab:
    # context
    group: str = "z2"
    alphas: Union[float, list[float]] = 1.0  # per axis on Z2^d, per root orbit otherwise
    dim: Optional[int] = None
    convention: Optional[str] = None

    # config.yaml sections
    quadrature: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    bessel: dict = field(default_factory=lambda: {"series_cutoff": 8.0})
    sampling: dict = field(
        default_factory=lambda: {
            "seed": 0,
            "random_samples": 1000,
            "grid_points": 9,
            "translation_cases": 20,
            "samples_per_shell": 64,
        }
    )
    logging: dict = field(default_factory=lambda: {"level": "INFO"})

    show_progress: bool = True

    def __post_init__(self):
        _print_config = ",\n  ".join([f"{k} = {v}" for k, v in asdict(self).items()])
        logger.debug(f"DunklLab init with param:\n\n  {_print_config}\n")

        self.quadrature_settings = self._settings(QuadratureSettings, {**self.quadrature, **self.bessel}, "quadrature")
        self.tolerance_settings = self._settings(ToleranceSettings, self.tolerances, "tolerances")
        root_system = parse_group(self.group, self.dim, bound=self.quadrature_settings.group_bound)
        with timer("context"):
            self.ctx: WeightContext = build_context(
                root_system, self.alphas, convention=self.convention, quadrature=self.quadrature_settings
            )
        self.dim = self.ctx.dim
        logger.info(
            f"Context {root_system.kind} d={self.ctx.dim} |W|={root_system.order} "
            f"γ={self.ctx.gamma:g} c_k={self.ctx.mehta:.10g} d_k={self.ctx.sphere_mass:.10g}"
        )

    @staticmethod
    def _settings(cls, values: dict, section: str):
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise DomainError(f"unknown {section} settings: {sorted(unknown)}")
        return cls(**values)

    @classmethod
    def from_config(cls, path: str, **overrides) -> "DunklLab":
        with open(path, "r") as file:
            config = yaml.safe_load(file) or {}
        kwargs = {k: config[k] for k in ("quadrature", "tolerances", "bessel", "sampling", "logging") if k in config}
        kwargs.update(config.get("context") or {})
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)

    # helpers for the suites
    @property
    def seed(self) -> int:
        return int(self.sampling.get("seed", 0))

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def samples(self, key: str, default: int) -> int:
        return int(self.sampling.get(key, default))

    def progress(self, iterable: Iterable, desc: str):
        return tqdm(iterable, desc=desc, disable=not self.show_progress, file=sys.stderr, leave=False)

    def scalar_field(self, entry: Union[str, ScalarField], dim: Optional[int] = None) -> ScalarField:
        if isinstance(entry, ScalarField):
            return entry
        return make_field(entry, dim or self.ctx.dim)

    # evaluation
    def kernel(self, x, z, laplace: bool = False) -> Estimate:
        """K(x, z) in closed form, or by the Laplace representation."""
        if laplace:
            return kernel_via_laplace(self.ctx, x, z)
        value = dunkl_kernel_product(self.ctx, np.asarray(x, dtype=complex), np.asarray(z, dtype=complex))
        return Estimate(value=complex(value), error=0.0, order=0)

    def kernel_rank1(self, gamma: float, x, t) -> Estimate:
        value = dunkl_kernel_rank1(gamma, x, t, series_cutoff=self.quadrature_settings.series_cutoff)
        return Estimate(value=complex(value), error=0.0, order=0)

    def vk(self, g: Union[str, ScalarField], x, order: Optional[int] = None) -> Estimate:
        return vk_apply(self.ctx, self.scalar_field(g), x, order=order)

    def tvk(self, f: Union[str, ScalarField], y, order: Optional[int] = None) -> Estimate:
        return tvk_apply(self.ctx, self.scalar_field(f), y, order=order)

    def tvk_gaussian(self, a: float, y) -> Estimate:
        return Estimate(value=tvk_gaussian_reference(self.ctx, a, y), error=0.0, order=0)

    def translate(self, f: Union[str, ScalarField], x, y, order: Optional[int] = None) -> Estimate:
        """τ_x f(y): the rank-one formula on d = 1, the radial formula otherwise."""
        f = self.scalar_field(f)
        if self.ctx.dim == 1:
            return translate_rank1(self.ctx.gamma, f, float(np.ravel(x)[0]), float(np.ravel(y)[0]), order=order)
        return translate_radial(self.ctx, f, x, y, order=order)

    def jw(self, x, z) -> Estimate:
        return Estimate(value=generalized_bessel(self.ctx, x, z), error=0.0, order=0)

    # verification
    def verify(self, suites: Union[str, Sequence[str]] = "all") -> list[CheckRow]:
        from ._suites import SUITES

        names = list(SUITES) if suites == "all" else ([suites] if isinstance(suites, str) else list(suites))
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise DomainError(f"unknown suites {unknown}; available: {list(SUITES)}")
        rows: list[CheckRow] = []
        for name in names:
            with timer(f"suite {name}"):
                suite_rows = SUITES[name](self)
            rows.extend(sorted(suite_rows, key=lambda r: r.check_id))
        summarize(rows)
        return rows
