import json
import math

import pytest

from dunkl_lab._report import COLUMNS, check, render, render_record, summarize, write_report
from dunkl_lab.base import Estimate


def _rows():
    return [
        check("constants", "01-mehta", "c_k ∫ e^{-|x|²} ω_k dx = 1", 1.0 + 1e-12, 1.0, 1e-8),
        check("kernel", "05-bound", "|K(ix, y)| <= 1", 1.0 + 1e-9, 1.0, 1e-10, mode="le"),
    ]


class TestCheck:
    def test_relative(self):
        row = check("s", "a", "x = y", 1.0 + 1e-9, 1.0, 1e-8)
        assert row.passed
        assert row.rel_err == pytest.approx(1e-9, rel=1e-3)

    def test_zero_target(self):
        assert check("s", "a", "x = 0", 0.0, 0.0, 0.0).passed
        row = check("s", "a", "x = 0", 1e-20, 0.0, 1e-8)
        assert not row.passed and math.isinf(row.rel_err)

    def test_absolute(self):
        assert check("s", "a", "x = 0", 1e-9, 0.0, 1e-8, mode="abs").passed

    def test_inequalities(self):
        assert check("s", "a", "x <= 1", 1.0 + 1e-11, 1.0, 1e-10, mode="le").passed
        assert not check("s", "a", "x < 0", 0.0, 0.0, 0.0, mode="lt").passed
        row = check("s", "a", "x < 1", 0.5, 1.0, 0.0, mode="lt")
        assert row.passed and row.abs_err == 0.0

    def test_estimates_and_complex(self):
        row = check("s", "a", "z = w", Estimate(value=1 + 1e-12j, error=0.0, order=8), 1.0, 1e-9)
        assert row.passed
        assert row.lhs == pytest.approx(1.0)

    def test_nan_fails(self):
        assert not check("s", "a", "x = 1", float("nan"), 1.0, 1.0).passed

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            check("s", "a", "x", 1.0, 1.0, 0.0, mode="eq")


class TestRendering:
    def test_csv(self):
        text = render(_rows(), "csv")
        lines = text.splitlines()
        assert lines[0] == ",".join(COLUMNS)
        assert lines[1].startswith("constants,01-mehta,")
        assert lines[2].endswith(",False")
        assert "\r" not in text

    def test_json(self):
        records = json.loads(render(_rows(), "json"))
        assert [r["check_id"] for r in records] == ["01-mehta", "05-bound"]
        assert records[0]["pass"] is True
        assert records[0]["lhs"] == 1.0

    def test_deterministic(self):
        assert render(_rows(), "csv") == render(_rows(), "csv")

    def test_record(self):
        record = {"kind": "kernel", "value": 1.5430806348152437, "error": 0.0, "order": 0}
        assert "1.54308063482" in render_record(record, "csv")
        assert json.loads(render_record(record, "json"))["value"] == 1.54308063482

    def test_write(self, tmp_path):
        out = tmp_path / "report.csv"
        text = write_report(_rows(), "csv", str(out))
        assert out.read_text(encoding="utf-8") == text

    def test_summary(self):
        assert summarize(_rows()) == {"constants": (1, 1), "kernel": (0, 1)}
