"""dunkl-lab command line: evaluate one operator, or run verification suites into a report.

    dunkl-lab eval kernel --d 1 --gamma 1 --x 1 --z 1
    dunkl-lab eval tvk --gaussian --a 1 --d 1 --gamma 1 --y 0
    dunkl-lab verify constants --group z2^2 --alphas 1,1 --format json

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or contract error, 3 accuracy not reached.
"""

import argparse
import logging
import os
import sys
from typing import Literal, Optional, Sequence

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ._report import render_record, write_report
from ._utils import logger, parse_vector
from .base import AccuracyError, ContractError, DunklLabError, Estimate
from .lab import DunklLab

EVAL_KINDS = ("kernel", "vk", "tvk", "translate", "jw")
SUITE_NAMES = ("constants", "kernel", "duality", "density", "spherical", "translate", "decay", "all")
DEFAULT_CONFIG = "config.yaml"


class RunConfig(BaseModel):
    """Validated command-line context, merged over the config file."""

    group: Optional[str] = None
    alphas: Optional[list[float]] = None
    d: Optional[int] = Field(default=None, ge=1, le=3)
    gamma: Optional[float] = Field(default=None, ge=0)
    order: Optional[int] = Field(default=None, ge=1)
    max_order: Optional[int] = Field(default=None, ge=1)
    tolerances: dict[str, float] = Field(default_factory=dict)
    refine_rtol: Optional[float] = Field(default=None, gt=0)
    format: Literal["csv", "json"] = "csv"
    seed: Optional[int] = Field(default=None, ge=0)
    out: Optional[str] = None
    config: Optional[str] = None
    quiet: bool = False

    @field_validator("alphas")
    @classmethod
    def _nonnegative(cls, v):
        if v is not None and any(a < 0 for a in v):
            raise ValueError(f"multiplicities must be >= 0, got {v}")
        return v

    @field_validator("group")
    @classmethod
    def _group_spec(cls, v):
        if v is not None and not v.strip():
            raise ValueError("empty group spec")
        return v

    @model_validator(mode="after")
    def _context(self):
        if self.d is not None and self.group and not self.group.lower().startswith("z2"):
            raise ValueError("--d applies to the z2^d group only")
        if self.d is not None and self.alphas is not None and len(self.alphas) not in (1, self.d):
            raise ValueError(f"--alphas needs 1 or {self.d} values, got {len(self.alphas)}")
        return self

    def context(self) -> dict:
        """DunklLab context keywords given on the command line; empty when none was given."""
        if self.group is None and self.d is None:
            return {}
        group = self.group or f"z2^{self.d}"
        if self.alphas is not None:
            alphas = self.alphas if len(self.alphas) > 1 else self.alphas[0]
        elif self.gamma is not None:
            # γ spread evenly over the axes of Z2^d
            alphas = self.gamma / (self.d or 1) if group.lower().startswith("z2") else self.gamma
        else:
            alphas = 1.0
        return {"group": group, "alphas": alphas, "dim": self.d}


# Parsing -----------------------------------------------------------------------------
def _tolerance_flags(items: Sequence[str]) -> tuple[dict[str, float], Optional[float]]:
    """--tol NAME=VALUE overrides a tolerance; a bare --tol VALUE sets the refinement tolerance."""
    named, bare = {}, None
    for item in items or []:
        if "=" in item:
            name, value = item.split("=", 1)
            named[name.strip()] = float(value)
        else:
            bare = float(item)
    return named, bare


def build_parser() -> argparse.ArgumentParser:
    context = argparse.ArgumentParser(add_help=False)
    context.add_argument("--group", type=str, default=None, help='"z2^d", "dihedral(m)" or "roots:a,b;c,d"')
    context.add_argument("--alphas", type=str, default=None, help="Multiplicities, per axis on z2^d, per orbit otherwise")
    context.add_argument("--d", type=int, default=None, help="Dimension of z2^d when no group is given")
    context.add_argument("--gamma", type=float, default=None, help="Total index γ, spread over the axes of z2^d")
    context.add_argument("--order", type=int, default=None, help="Quadrature order of the first pass")
    context.add_argument("--max-order", type=int, default=None, help="Refinement cap")
    context.add_argument("--tol", action="append", default=[], help="NAME=VALUE tolerance override, or a bare refinement tolerance")
    context.add_argument("--format", choices=["csv", "json"], default="csv")
    context.add_argument("--seed", type=int, default=None)
    context.add_argument("--out", type=str, default=None, help="Write the report to a file instead of stdout")
    context.add_argument("--config", type=str, default=None, help=f"YAML config (default: ./{DEFAULT_CONFIG} if present)")
    context.add_argument("--quiet", action="store_true", help="Only warnings on stderr, no progress bars")

    parser = argparse.ArgumentParser(prog="dunkl-lab", description="Dunkl kernel, intertwiner and density toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate = commands.add_parser("eval", parents=[context], help="Evaluate one operator")
    evaluate.add_argument("kind", choices=EVAL_KINDS)
    evaluate.add_argument("--x", type=str, default=None)
    evaluate.add_argument("--y", type=str, default=None)
    evaluate.add_argument("--z", type=str, default=None)
    evaluate.add_argument("--g", type=str, default=None, help="Catalog function for vk")
    evaluate.add_argument("--f", type=str, default=None, help="Catalog function for tvk and translate")
    evaluate.add_argument("--gaussian", action="store_true", help="tvk of e^{-a|x|²} in closed form")
    evaluate.add_argument("--a", type=float, default=1.0)
    evaluate.add_argument("--laplace", action="store_true", help="Kernel by its Laplace representation")

    verify = commands.add_parser("verify", parents=[context], help="Run verification suites")
    verify.add_argument("suite", choices=SUITE_NAMES)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    named, bare = _tolerance_flags(args.tol)
    alphas = None if args.alphas is None else [float(v) for v in parse_vector(args.alphas)]
    return RunConfig(
        group=args.group,
        alphas=alphas,
        d=args.d,
        gamma=args.gamma,
        order=args.order,
        max_order=args.max_order,
        tolerances=named,
        refine_rtol=bare,
        format=args.format,
        seed=args.seed,
        out=args.out,
        config=args.config,
        quiet=args.quiet,
    )


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        if not os.path.exists(DEFAULT_CONFIG):
            return {}
        path = DEFAULT_CONFIG
    try:
        with open(path, "r") as file:
            return yaml.safe_load(file) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ContractError(f"cannot read config {path}: {e}") from e


def make_lab(run: RunConfig) -> DunklLab:
    config = _load_config(run.config)
    kwargs = {k: dict(config.get(k) or {}) for k in ("quadrature", "tolerances", "bessel", "sampling", "logging")}
    context = run.context() or dict(config.get("context") or {})
    if not context:
        raise ContractError("no context: give --group/--alphas or --d/--gamma, or a context section in the config")
    kwargs.update(context)

    if run.order is not None:
        kwargs["quadrature"]["order"] = run.order
    if run.max_order is not None:
        kwargs["quadrature"]["max_order"] = run.max_order
    if run.refine_rtol is not None:
        kwargs["quadrature"]["refine_rtol"] = run.refine_rtol
    kwargs["tolerances"].update(run.tolerances)
    if run.seed is not None:
        kwargs["sampling"]["seed"] = run.seed
    if not kwargs["sampling"]:
        del kwargs["sampling"]
    if not kwargs["bessel"]:
        del kwargs["bessel"]
    return DunklLab(**kwargs, show_progress=not run.quiet)


def _configure_logging(run: RunConfig):
    config = _load_config(run.config) if not run.quiet else {}
    level = "WARNING" if run.quiet else str((config.get("logging") or {}).get("level", "INFO")).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


# Commands ----------------------------------------------------------------------------
def _point(text: Optional[str], dim: int, name: str, dtype=float) -> np.ndarray:
    if text is None:
        raise ContractError(f"--{name} is required")
    try:
        value = parse_vector(text, dtype=dtype)
    except (ValueError, TypeError) as e:
        raise ContractError(f"--{name}: cannot read {text!r} as a point") from e
    if value.shape != (dim,):
        raise ContractError(f"--{name} needs {dim} components, got {value.size}")
    return value


def _record(kind: str, estimate: Estimate) -> dict:
    value = complex(estimate.value)
    record = {"kind": kind}
    if value.imag == 0:
        record["value"] = value.real
    else:
        record["value_real"], record["value_imag"] = value.real, value.imag
    record["error"] = float(estimate.error)
    record["order"] = int(estimate.order)
    return record


def cmd_eval(lab: DunklLab, args: argparse.Namespace) -> dict:
    d = lab.ctx.dim
    if args.kind == "kernel":
        # the Laplace route integrates over μ_x and needs a real x
        x = _point(args.x, d, "x", float if args.laplace else complex)
        estimate = lab.kernel(x, _point(args.z, d, "z", complex), laplace=args.laplace)
    elif args.kind == "vk":
        estimate = lab.vk(args.g or "id", _point(args.x, d, "x"), order=args.order)
    elif args.kind == "tvk":
        y = _point(args.y, d, "y")
        if args.gaussian:
            estimate = lab.tvk_gaussian(args.a, y)
        elif args.f is None:
            raise ContractError("tvk needs --f or --gaussian")
        else:
            estimate = lab.tvk(args.f, y, order=args.order)
    elif args.kind == "translate":
        if args.f is None:
            raise ContractError("translate needs --f")
        estimate = lab.translate(args.f, _point(args.x, d, "x"), _point(args.y, d, "y"), order=args.order)
    else:
        estimate = lab.jw(_point(args.x, d, "x"), _point(args.z, d, "z"))
    return _record(args.kind, estimate)


def cmd_verify(lab: DunklLab, suite: str, run: RunConfig) -> int:
    rows = lab.verify(suite)
    text = write_report(rows, run.format, run.out)
    if not run.out:
        sys.stdout.write(text)
    failed = [r for r in rows if not r.passed]
    if failed:
        logger.warning(f"{len(failed)} of {len(rows)} checks failed")
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = _run_config(args)
    except (ValidationError, ValueError, TypeError) as e:
        logging.basicConfig(stream=sys.stderr)
        logger.error(f"invalid arguments: {e}")
        return 2
    try:
        _configure_logging(run)
        lab = make_lab(run)
        if args.command == "verify":
            return cmd_verify(lab, args.suite, run)
        text = render_record(cmd_eval(lab, args), run.format)
        if run.out:
            with open(run.out, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return 0
    except AccuracyError as e:
        logger.error(f"accuracy not reached: {e} (estimate {e.estimate}, error {e.error:.3g})")
        return 3
    except (DunklLabError, ValidationError) as e:
        logger.error(str(e))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
