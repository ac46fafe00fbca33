import pytest

from dunkl_lab import DunklLab
from dunkl_lab._report import render
from dunkl_lab._suites import SUITES
from dunkl_lab.base import DomainError, UnsupportedGroupError


def _small_lab(group: str, alphas) -> DunklLab:
    return DunklLab(
        group=group,
        alphas=alphas,
        show_progress=False,
        sampling={"seed": 7, "random_samples": 100, "grid_points": 5, "translation_cases": 4, "samples_per_shell": 16},
    )


class TestSuites:
    def test_registry(self):
        assert list(SUITES) == ["constants", "kernel", "duality", "density", "spherical", "translate", "decay"]

    def test_constants(self, lab_2):
        rows = lab_2.verify("constants")
        assert rows and all(r.passed for r in rows)
        assert {r.suite for r in rows} == {"constants"}
        assert [r.check_id for r in rows] == sorted(r.check_id for r in rows)

    def test_translate_rank_one(self):
        rows = _small_lab("z2^1", 1.0).verify("translate")
        ids = {r.check_id for r in rows}
        assert {"01-rank1-origin", "04-rank1-swap", "05-rank1-kernel", "06-rank1-linear", "15-radial-rank1"} <= ids
        assert all(r.passed for r in rows)

    def test_contraction_row(self):
        rows = {r.check_id: r for r in _small_lab("z2^1", 0.5).verify("duality")}
        contraction = rows["05-contraction"]
        assert contraction.passed
        assert 0.1 < contraction.lhs <= 1.0 + 1e-6

    def test_deterministic_report(self):
        first = render(_small_lab("z2^1", 1.5).verify("translate"), "csv")
        second = render(_small_lab("z2^1", 1.5).verify("translate"), "csv")
        assert first == second

    def test_rank_one_has_no_spherical_mean(self):
        rows = _small_lab("z2^1", 1.0).verify("spherical")
        assert rows and all(r.check_id < "10" for r in rows)

    def test_z2_only_suites(self):
        lab = _small_lab("dihedral(3)", 1.0)
        assert all(r.passed for r in lab.verify("constants"))
        with pytest.raises(UnsupportedGroupError):
            lab.verify("translate")

    def test_positive_multiplicities(self):
        with pytest.raises(DomainError):
            _small_lab("z2^2", [0.0, 1.0]).verify("translate")
