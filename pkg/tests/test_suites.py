import pytest
from pydantic import ValidationError

from app.core.suite_data import SUITE_ORDER, get_suite, list_suites
from app.models.schemas import SuiteConfig
from app.services.suites import SUITE_RUNNERS, run_suite


def test_every_catalogued_suite_has_a_runner():
    assert set(SUITE_ORDER) == set(SUITE_RUNNERS)
    assert [s["name"] for s in list_suites()] == SUITE_ORDER


def test_unknown_suite():
    with pytest.raises(ValueError, match="not found"):
        get_suite("quaternions")


@pytest.mark.parametrize("suite", SUITE_ORDER)
def test_suite_passes_with_a_small_sample(suite):
    report = run_suite(SuiteConfig(suite=suite, samples=4, seed=3))
    assert report.passed, report.to_dict()["checks"]
    assert report.exit_code == 0


def test_planted_sign_error_fails_the_module_axiom():
    report = run_suite(SuiteConfig(suite="module-axiom", samples=20, corrupt_sign=True))
    assert not report.passed
    assert report.exit_code == 1
    failed = [c for c in report.to_dict()["checks"] if c["failed"]]
    assert failed[0]["name"].startswith("module-axiom")
    assert failed[0]["failures"]


def test_sweeps_label_checks_by_algebra():
    names = [c["name"] for c in run_suite(SuiteConfig(suite="jacobi", samples=2)).to_dict()["checks"]]
    assert "jacobi[W(1,1)]" in names
    assert "jacobi[W(1,1)⋉Ad0]" in names
    assert "jacobi[W(2,1)]" in names
    report = run_suite(SuiteConfig(suite="bracket-vs-composition", samples=2)).to_dict()
    assert report["details"]["algebras"] == ["W(1,1)", "W(1,2)", "W(2,1)"]


def test_reports_are_deterministic():
    cfg = SuiteConfig(suite="jacobi", samples=10, seed=5)
    assert run_suite(cfg).to_dict() == run_suite(cfg).to_dict()


def test_report_shape():
    data = run_suite(SuiteConfig(suite="verma")).to_dict()
    assert data["group"] == get_suite("verma")["group"]
    assert data["config"]["lam0"] == "1"
    assert data["details"]["table"]["quotient_dims"] == [1, 1, 2]


class TestSuiteConfig:
    def test_defaults_come_from_the_catalogue(self):
        cfg = SuiteConfig(suite="ann")
        assert (cfg.m, cfg.n, cfg.rep) == (1, 0, "trivial")
        assert cfg.lam == ["1/2"]

    def test_suite_name_is_normalized(self):
        assert SuiteConfig(suite="Module_Axiom").suite == "module-axiom"

    def test_default_runs_sweep_the_catalogue(self):
        assert SuiteConfig(suite="jacobi").targets == [("wmn", 1, 1), ("wmn_d0", 1, 1), ("wm1n", 1, 1)]
        shapes = SuiteConfig(suite="bracket-vs-composition").targets
        assert shapes == [("wmn", 1, 1), ("wmn", 1, 2), ("wmn", 2, 1)]

    def test_explicit_choices_narrow_the_sweep(self):
        assert SuiteConfig(suite="jacobi", kind="wm1n").targets == [("wm1n", 1, 1)]
        assert SuiteConfig(suite="bracket-vs-composition", m=2, n=1).targets == [("wmn", 2, 1)]

    def test_lambda0_defaults_for_semidirect_kind(self):
        cfg = SuiteConfig(suite="module-axiom", kind="wmn_d0")
        assert cfg.lam0 == "1"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"suite": "nope"},
            {"suite": "jacobi", "m": 0, "n": 0},
            {"suite": "cover", "m": 0, "n": 1},
            {"suite": "ann", "kind": "wm1n"},
            {"suite": "jacobi", "lam0": "1"},
            {"suite": "jacobi", "samples": 0},
            {"suite": "module-axiom", "lam": ["a/b"]},
        ],
    )
    def test_invalid_configs(self, kwargs):
        with pytest.raises(ValidationError):
            SuiteConfig(**kwargs)
