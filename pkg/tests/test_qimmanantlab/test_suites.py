# Standard library
import json

# Third-party
import pytest

# First-party
from qimmanantlab import suites
from qimmanantlab.rep import HighestWeightError
from qimmanantlab.report import Outcome


def test_defaults():
    run = suites.load_config()
    assert run.n == 2
    assert run.module_sites == (1, 2)
    assert run.suites == suites.CATALOGUE
    assert run.truncation_order == 6
    assert run.cfg.q.denominator == 2
    assert [str(z) for z in run.zs] == ["0", "1", "2", "3"]
    assert suites.load_config(n=5).truncation_order == 7


def test_dump_omits_output_options():
    dumped = suites.load_config(out="report.json").dump()
    assert "out" not in dumped
    assert "format" not in dumped
    assert dumped["q"] == "3/2"
    assert dumped["module_sites"] == [1, 2]


@pytest.mark.parametrize(
    "overrides",
    [
        {"q": "1"},
        {"q": "0"},
        {"q": "-1"},
        {"q": "abc"},
        {"q": "1/0"},
        {"n": 1},
        {"m_max": 0},
        {"jobs": 0},
        {"module_sites": (0,)},
        {"module_sites": (-1,), "suites": ("newton",)},
        {"module_sites": (0, 1), "suites": ("newton", "capelli")},
        {"suites": ("rtt", "plotting")},
        {"newton_order": 1},
        {"suites": ("eigenvalues",), "z_samples": ("0", "1", "1")},
    ],
)
def test_invalid_config(overrides):
    with pytest.raises(suites.ValidationError):
        suites.load_config(**overrides)


def test_config_file_layers(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"q": "5/7", "n": 3, "suites": ["hecke"]}))
    run = suites.load_config(path, n=2)
    assert run.q == "5/7"
    assert run.n == 2
    assert run.suites == ("hecke",)


def test_config_file_unknown_key(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("plot: true\n")
    with pytest.raises(ValueError, match="plot"):
        suites.load_config(path)


def test_duplicate_suites_are_dropped():
    run = suites.load_config(suites=("rtt", "hecke", "rtt"))
    assert run.suites == ("rtt", "hecke")


def test_rmatrix_suite():
    report = suites.run_suite(suites.load_config(suites=("rmatrix",)))
    assert report.passed
    assert [c.params["check"] for c in report.checks] == [
        "yang-baxter",
        "braid",
        "hecke quadratic",
        "R inverse",
        "Ř inverse",
    ]
    assert all(c.time_ms is None for c in report.checks)
    assert report.config["suites"] == ["rmatrix"]


def test_jobs_are_merged_in_order():
    serial = suites.load_config(suites=("hecke", "rtt"), module_sites=(1,))
    parallel = suites.load_config(
        suites=("hecke", "rtt"), module_sites=(1,), jobs=2
    )
    first = suites.run_suite(serial)
    second = suites.run_suite(parallel)
    assert first.passed
    assert [c.to_dict() for c in first.checks] == [
        c.to_dict() for c in second.checks
    ]
    assert [c.suite for c in first.checks][0] == "hecke"


def test_eigenvalue_table():
    run = suites.load_config(
        suites=("eigenvalues",), m_max=1, module_sites=(1,), z_samples=("0", "1")
    )
    report = suites.run_suite(run)
    assert report.passed
    first = report.checks[0].to_dict()
    assert first["params"]["mu"] == "(1)"
    assert first["values"] == {"lambda": "(1)", "z": "0", "chi": "97/36"}


def test_capelli_suite_single_box():
    run = suites.load_config(suites=("capelli",), capelli_m_max=1)
    report = suites.run_suite(run)
    assert report.passed
    parts = [c.params["part"] for c in report.checks]
    assert parts[:4] == ["relations"] * 4
    entries = [c for c in report.checks if c.params["part"] == "entries"]
    assert len(entries) == 4
    assert all(c.values == {"residue": "zero"} for c in entries)


def test_timings():
    run = suites.load_config(suites=("rmatrix",), timings=True)
    report = suites.run_suite(run)
    assert all(isinstance(c.time_ms, int) for c in report.checks)


class BrokenSuite(suites.Suite):
    name = "broken"

    def jobs(self, run):
        yield {"n": run.n}

    def _run(self, run, n):
        raise HighestWeightError("no vector")


class PassingSuite(suites.Suite):
    name = "passing"

    def jobs(self, run):
        yield {"n": run.n}
        yield {"n": run.n + 1}

    def _run(self, run, n):
        return [Outcome("ok", True, values={"n": n})]


def test_domain_errors_become_failures():
    run = suites.load_config()
    (check,) = BrokenSuite()(run, {"n": 2})
    assert not check.passed
    assert check.params == {"n": 2, "check": "error"}
    assert check.witness == {"error": "HighestWeightError", "message": "no vector"}


def test_suite_jobs():
    run = suites.load_config()
    suite = PassingSuite()
    checks = [check for params in suite.jobs(run) for check in suite(run, params)]
    assert [c.values for c in checks] == [{"n": 2}, {"n": 3}]


@pytest.mark.slow
def test_default_run():
    report = suites.run_suite(suites.load_config())
    assert report.passed


def test_newton_on_trivial_module():
    run = suites.load_config(suites=("newton", "hecke"), module_sites=(0,))
    report = suites.run_suite(run)
    assert report.passed
    newton = [c for c in report.checks if c.suite == "newton"]
    assert newton
    assert all(c.params["N"] == 0 for c in newton)


def test_basis_suite_reads_operators():
    run = suites.load_config(suites=("basis",), m_max=1, basis_module_max=2)
    report = suites.run_suite(run)
    assert report.passed
    names = [c.params["check"] for c in report.checks[:2]]
    assert names == ["basis z=0", "basis eigenvalues z=0"]
