import json

import numpy as np
import pytest
import yaml

from dunkl_lab.cli import RunConfig, _tolerance_flags, main


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    # no config.yaml is picked up from the repository
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _value(capsys) -> float:
    return json.loads(capsys.readouterr().out)["value"]


class TestEval:
    def test_kernel(self, capsys):
        assert main(["eval", "kernel", "--d", "1", "--gamma", "1", "--x", "1", "--z", "1", "--format", "json"]) == 0
        assert _value(capsys) == pytest.approx(np.cosh(1.0), abs=1e-10)

    def test_kernel_csv(self, capsys):
        assert main(["eval", "kernel", "--d", "1", "--gamma", "1", "--x", "1", "--z", "1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "kind,value,error,order"
        assert lines[1].startswith("kernel,1.54308063482,")

    def test_vk(self, capsys):
        assert main(["eval", "vk", "--d", "1", "--gamma", "1", "--x", "1", "--format", "json", "--quiet"]) == 0
        assert _value(capsys) == pytest.approx(1 / 3, abs=1e-9)

    def test_tvk_gaussian(self, capsys):
        args = ["eval", "tvk", "--gaussian", "--a", "1", "--d", "1", "--gamma", "1", "--y", "0", "--format", "json"]
        assert main(args) == 0
        assert _value(capsys) == pytest.approx(0.5)

    def test_complex_kernel(self, capsys):
        assert main(["eval", "kernel", "--d", "1", "--gamma", "0.5", "--x", "1i", "--z", "1", "--format", "json"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert "value_imag" in record

    def test_output_file(self, isolated, capsys):
        out = isolated / "kernel.csv"
        assert main(["eval", "kernel", "--d", "1", "--gamma", "1", "--x", "1", "--z", "1", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert "1.54308063482" in out.read_text(encoding="utf-8")


class TestVerify:
    def test_constants(self, capsys):
        assert main(["verify", "constants", "--group", "z2^2", "--alphas", "1,1", "--quiet"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("suite,check_id,identity")
        assert all(line.endswith(",True") for line in lines[1:])

    def test_json_report(self, capsys):
        assert main(["verify", "constants", "--group", "z2^2", "--alphas", "0.5,1.5", "--format", "json", "--quiet"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert rows and all(r["pass"] for r in rows)
        assert rows[0]["suite"] == "constants"

    def test_config_context(self, isolated, capsys):
        (isolated / "config.yaml").write_text(yaml.safe_dump({"context": {"group": "z2^1", "alphas": 1.0}}))
        assert main(["eval", "kernel", "--x", "1", "--z", "1", "--format", "json", "--quiet"]) == 0
        assert _value(capsys) == pytest.approx(np.cosh(1.0), abs=1e-10)


class TestExitCodes:
    def test_no_context(self):
        assert main(["eval", "kernel", "--x", "1", "--z", "1", "--quiet"]) == 2

    def test_negative_alphas(self):
        assert main(["eval", "kernel", "--group", "z2^2", "--alphas=-1,1", "--x", "1,1", "--z", "1,1"]) == 2

    def test_unknown_tolerance(self):
        assert main(["verify", "constants", "--d", "1", "--gamma", "1", "--tol", "bogus=1", "--quiet"]) == 2

    def test_wrong_point_size(self):
        assert main(["eval", "kernel", "--d", "2", "--gamma", "1", "--x", "1", "--z", "1,1", "--quiet"]) == 2

    @pytest.mark.parametrize(
        "point",
        [
            ["kernel", "--x", "abc", "--z", "1"],
            ["kernel", "--x", "1", "--z", "1,,x"],
            ["translate", "--f", "gaussian", "--x", "0.5", "--y", "1e"],
            ["tvk", "--f", "bump(2)", "--y", "2i"],
        ],
    )
    def test_malformed_point(self, point):
        assert main(["eval", *point, "--d", "1", "--gamma", "1", "--quiet"]) == 2

    def test_malformed_alphas(self):
        assert main(["eval", "kernel", "--group", "z2^1", "--alphas", "1i", "--x", "1", "--z", "1", "--quiet"]) == 2

    def test_missing_support(self):
        assert main(["eval", "tvk", "--d", "1", "--gamma", "1", "--f", "cosine", "--y", "0.2", "--quiet"]) == 2

    def test_unreadable_config(self):
        assert main(["eval", "kernel", "--d", "1", "--x", "1", "--z", "1", "--config", "missing.yaml", "--quiet"]) == 2

    def test_accuracy(self):
        args = ["eval", "vk", "--d", "1", "--gamma", "1", "--g", "cosine", "--x", "5", "--order", "1", "--max-order", "2"]
        assert main(args + ["--quiet"]) == 3

    def test_usage(self):
        with pytest.raises(SystemExit) as info:
            main(["eval", "nothing"])
        assert info.value.code == 2


class TestRunConfig:
    def test_tolerance_flags(self):
        assert _tolerance_flags(["translation=1e-6", "1e-10"]) == ({"translation": 1e-6}, 1e-10)

    def test_gamma_is_spread(self):
        assert RunConfig(d=2, gamma=1.0).context() == {"group": "z2^2", "alphas": 0.5, "dim": 2}

    def test_no_context(self):
        assert RunConfig().context() == {}

    def test_alphas_length(self):
        with pytest.raises(ValueError):
            RunConfig(d=2, alphas=[1.0, 1.0, 1.0])
