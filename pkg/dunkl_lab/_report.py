"""Check rows and their CSV / JSON rendering."""

import json
import math
from typing import Iterable, Literal, Optional

import numpy as np
import pandas as pd

from ._utils import format_number, logger
from .base import CheckRow, Estimate

COLUMNS = ["suite", "check_id", "identity", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass"]
CheckMode = Literal["rel", "abs", "le", "lt"]


def _real(value) -> float:
    if isinstance(value, Estimate):
        value = value.value
    value = complex(np.asarray(value).reshape(()))
    return value.real if value.imag == 0 else abs(value)


def check(
    suite: str,
    check_id: str,
    identity: str,
    lhs,
    rhs,
    tol: float,
    mode: CheckMode = "rel",
) -> CheckRow:
    """One report row comparing `lhs` against `rhs`.

    rel: |lhs - rhs| <= tol·|rhs| (two exact zeros pass); abs: |lhs - rhs| <= tol;
    le: lhs <= rhs + tol; lt: lhs < rhs. Complex values are compared as complex numbers
    and reported by their real part when real, by modulus otherwise.
    """
    lhs_c = complex(np.asarray(lhs.value if isinstance(lhs, Estimate) else lhs).reshape(()))
    rhs_c = complex(np.asarray(rhs.value if isinstance(rhs, Estimate) else rhs).reshape(()))
    if mode in ("le", "lt"):
        abs_err = max(lhs_c.real - rhs_c.real, 0.0)
    else:
        abs_err = abs(lhs_c - rhs_c)
    scale = abs(rhs_c)
    if scale > 0:
        rel_err = abs_err / scale
    else:
        rel_err = 0.0 if abs_err == 0 else math.inf

    if math.isnan(abs_err):
        passed = False
    elif mode == "rel":
        passed = rel_err <= tol
    elif mode == "abs":
        passed = abs_err <= tol
    elif mode == "le":
        passed = lhs_c.real <= rhs_c.real + tol
    elif mode == "lt":
        passed = lhs_c.real < rhs_c.real
    else:
        raise ValueError(f"unknown check mode {mode!r}")
    if not passed:
        logger.info(f"[{suite}] {check_id} failed: {identity} ({lhs_c} vs {rhs_c}, tol {tol:g})")
    return CheckRow(
        suite=suite,
        check_id=check_id,
        identity=identity,
        lhs=_real(lhs_c),
        rhs=_real(rhs_c),
        abs_err=float(abs_err),
        rel_err=float(rel_err),
        tol=float(tol),
        passed=bool(passed),
    )


# Rendering ---------------------------------------------------------------------------
def to_frame(rows: Iterable[CheckRow]) -> pd.DataFrame:
    records = [
        {
            "suite": r.suite,
            "check_id": r.check_id,
            "identity": r.identity,
            "lhs": r.lhs,
            "rhs": r.rhs,
            "abs_err": r.abs_err,
            "rel_err": r.rel_err,
            "tol": r.tol,
            "pass": r.passed,
        }
        for r in rows
    ]
    return pd.DataFrame.from_records(records, columns=COLUMNS)


def render(rows: Iterable[CheckRow], fmt: Literal["csv", "json"] = "csv") -> str:
    frame = to_frame(rows)
    if fmt == "csv":
        return frame.to_csv(index=False, float_format="%.12g", lineterminator="\n")
    records = [
        {k: (format_number(v) if isinstance(v, (float, np.floating, bool, np.bool_)) else v) for k, v in rec.items()}
        for rec in frame.to_dict(orient="records")
    ]
    return json.dumps(records, indent=2, ensure_ascii=False) + "\n"


def render_record(record: dict, fmt: Literal["csv", "json"] = "csv") -> str:
    """A single evaluation result, e.g. {"kind": "kernel", "value": ..., "error": ..., "order": ...}."""
    if fmt == "csv":
        return pd.DataFrame([record]).to_csv(index=False, float_format="%.12g", lineterminator="\n")
    return json.dumps({k: format_number(v) if isinstance(v, float) else v for k, v in record.items()}, indent=2) + "\n"


def write_report(rows: list[CheckRow], fmt: Literal["csv", "json"], out: Optional[str] = None) -> str:
    text = render(rows, fmt)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"Wrote {len(rows)} rows to {out}")
    return text


def summarize(rows: list[CheckRow]) -> dict[str, tuple[int, int]]:
    """{suite: (passed, total)}."""
    summary: dict[str, tuple[int, int]] = {}
    for r in rows:
        passed, total = summary.get(r.suite, (0, 0))
        summary[r.suite] = (passed + r.passed, total + 1)
    for suite, (passed, total) in summary.items():
        logger.info(f"{suite}: {passed}/{total} checks passed")
    return summary
