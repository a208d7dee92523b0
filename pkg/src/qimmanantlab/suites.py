"""Verification suites and their orchestration."""

# Standard library
import dataclasses as dc
import logging
import time
from abc import ABCMeta, abstractmethod
from collections.abc import Iterator, Mapping
from fractions import Fraction
from functools import cache
from importlib.resources import files
from pathlib import Path
from typing import Any, Literal

# Third-party
import pydantic
import yaml
from pydantic import dataclasses as pdc

# Local
from . import config, tasking
from .capelli import verify_capelli, verify_traced_capelli
from .combinatorics import YoungDiagram, partitions, standard_tableaux
from .exact import NonGenericParameterError, QConfig
from .hecke import HeckeAction, tableaux_of_size, verify_idempotents
from .immanants import (
    RouteMismatchError,
    build_immanant_poly,
    central_family,
    verify_basis_rank,
    verify_centrality,
    verify_column_eigenvalues,
    verify_eigenvalue_genfn,
    verify_eigenvalues,
    verify_newton,
    verify_tableau_independence,
    weights_of,
)
from .rep import (
    HighestWeightError,
    NotScalarError,
    build_rep,
    verify_highest_weight,
    verify_rtt,
)
from .report import Check, Outcome, Report, check_equal
from .tensor import (
    AUX,
    InconsistentSystemError,
    TensorOp,
    build_R,
    build_R_inverse,
    build_Rcheck,
    build_Rcheck_inverse,
    embed,
    rcheck_at,
)
from .weyl import ScaleExceededError, mirror_matches, relation_self_check

logger = logging.getLogger(__name__)

ValidationError = pydantic.ValidationError

CATALOGUE = (
    "rmatrix",
    "rtt",
    "hecke",
    "centrality",
    "tableau-independence",
    "eigenvalues",
    "basis",
    "newton",
    "capelli",
)

# suites that need at least one module site
NEEDS_MODULE_SITES = (
    "rtt",
    "centrality",
    "tableau-independence",
    "eigenvalues",
    "capelli",
)

# failures of the construction itself, reported as failing checks
DOMAIN_ERRORS = (
    HighestWeightError,
    InconsistentSystemError,
    NonGenericParameterError,
    NotScalarError,
    RouteMismatchError,
    ScaleExceededError,
)


def _parse_rational(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"{value!r} is not a rational number p/r") from err


def _positive(value: int) -> int:
    if value < 1:
        raise ValueError(f"{value} must be positive")
    return value


@pdc.dataclass(frozen=True)
class RunConfig:
    """Validated parameters of a verification run.

    Rationals are kept as strings so that the configuration serialises
    losslessly into the report.
    """

    n: int = 2
    module_sites: tuple[int, ...] = (1, 2)
    m_max: int = 2
    q: str = "3/2"
    z_samples: tuple[str, ...] = ("0", "1", "2", "3")
    newton_order: int | None = None
    capelli_m_max: int = 2
    basis_module_max: int = 4
    suites: tuple[str, ...] = CATALOGUE
    out: str | None = None
    jobs: int = 1
    format: Literal["json", "text"] = "json"
    timings: bool = False

    @pydantic.field_validator("n")
    @classmethod
    def validate_n(cls, v: int) -> int:
        if v < 2:
            raise ValueError(f"n={v} must be at least 2")
        return v

    @pydantic.field_validator("q")
    @classmethod
    def validate_q(cls, v: str) -> str:
        if _parse_rational(v) in (0, 1, -1):
            raise ValueError(f"q={v} is not generic")
        return v

    @pydantic.field_validator("z_samples")
    @classmethod
    def validate_z_samples(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        for z in v:
            _parse_rational(z)
        return v

    @pydantic.field_validator("module_sites")
    @classmethod
    def validate_module_sites(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if not v:
            raise ValueError("at least one module size is needed")
        negative = [N for N in v if N < 0]
        if negative:
            raise ValueError(f"module sizes {negative} are negative")
        return v

    @pydantic.field_validator("m_max", "capelli_m_max", "basis_module_max", "jobs")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        return _positive(v)

    @pydantic.field_validator("suites")
    @classmethod
    def validate_suites(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        unknown = [name for name in v if name not in CATALOGUE]
        if unknown:
            raise ValueError(f"unknown suites {unknown}, choose from {CATALOGUE}")
        return tuple(dict.fromkeys(v))

    @pydantic.model_validator(mode="after")
    def validate_combination(self) -> "RunConfig":
        if self.newton_order is not None and self.newton_order < self.n:
            raise ValueError(f"newton_order={self.newton_order} is below n={self.n}")
        unsupported = [name for name in self.suites if name in NEEDS_MODULE_SITES]
        if 0 in self.module_sites and unsupported:
            raise ValueError(f"N=0 is not supported by the suites {unsupported}")
        distinct = len({Fraction(z) for z in self.z_samples})
        if "eigenvalues" in self.suites and distinct < self.m_max + 1:
            raise ValueError(
                f"{distinct} distinct z samples cannot pin polynomials of degree "
                f"{self.m_max}"
            )
        return self

    @property
    def cfg(self) -> QConfig:
        return QConfig(Fraction(self.q))

    @property
    def zs(self) -> list[Fraction]:
        return [Fraction(z) for z in self.z_samples]

    @property
    def truncation_order(self) -> int:
        if self.newton_order is None:
            return max(6, self.n + 2)
        return self.newton_order

    def dump(self) -> dict[str, Any]:
        root = pydantic.RootModel(self)
        dumped = root.model_dump(mode="json")
        # output options do not change the checks
        for key in ("out", "format"):
            dumped.pop(key)
        return dumped


@cache
def _load_defaults() -> dict[str, Any]:
    defaults_path = files("qimmanantlab.data").joinpath("defaults.yaml")
    with defaults_path.open() as f:
        return yaml.safe_load(f)


def load_config(path: Path | str | None = None, **overrides: Any) -> RunConfig:
    """Build the run configuration from defaults, a config file and overrides.

    Later layers win; overrides that are ``None`` are ignored.

    Raises
    ------
    ValueError
        if the config file holds keys that are not configuration fields.
    pydantic.ValidationError
        if the merged values are invalid.

    """
    values = dict(_load_defaults())
    if path is not None:
        with Path(path).open(encoding="utf-8") as f:
            from_file = yaml.safe_load(f) or {}
        if not isinstance(from_file, Mapping):
            raise ValueError(f"config file {path} does not hold a mapping")
        values.update(from_file)
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = {field.name for field in dc.fields(RunConfig)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ValueError(f"unknown configuration keys {unknown}")
    values["q"] = str(values["q"])
    values["z_samples"] = tuple(str(z) for z in values["z_samples"])
    for key in ("module_sites", "suites"):
        values[key] = tuple(values[key])
    return RunConfig(**values)


class Suite(metaclass=ABCMeta):
    """Base class for verification suites.

    A suite expands a run configuration into independent jobs. Each job
    returns the checks it performed, so jobs can be computed in parallel and
    merged in order afterwards.
    """

    name: str

    def __init__(self, delay_entire_suite: bool = False):
        self._delay_entire_suite = delay_entire_suite

    @abstractmethod
    def jobs(self, run: RunConfig) -> Iterator[dict[str, Any]]:
        pass

    @abstractmethod
    def _run(self, run: RunConfig, **params) -> list[Outcome]:
        pass

    def _execute(self, run: RunConfig, params: dict[str, Any]) -> list[Check]:
        logger.info("Running %s with %s", self.name, params)
        start = time.perf_counter()
        try:
            outcomes = self._run(run, **params)
        except DOMAIN_ERRORS as err:
            logger.error("Suite %s failed for %s: %s", self.name, params, err)
            outcomes = [
                Outcome(
                    "error",
                    False,
                    witness={"error": type(err).__name__, "message": str(err)},
                )
            ]
        elapsed = None
        if run.timings:
            elapsed = round((time.perf_counter() - start) * 1000)
        return [
            Check.from_outcome(self.name, params, outcome, elapsed)
            for outcome in outcomes
        ]

    def __call__(self, run: RunConfig, params: dict[str, Any]):
        if self._delay_entire_suite:
            return tasking.delayed(self._execute)(run, params)
        else:
            return self._execute(run, params)


def _shapes(run: RunConfig) -> list[YoungDiagram]:
    return [shape for m in range(1, run.m_max + 1) for shape in partitions(m, run.n)]


class RMatrixSuite(Suite):
    name = "rmatrix"

    def jobs(self, run):
        yield {"n": run.n}

    def _run(self, run, n):
        cfg = run.cfg
        R = build_R(n, cfg)
        r12, r13, r23 = (embed(R, sites, 3) for sites in ([1, 2], [1, 3], [2, 3]))
        layout = (AUX,) * 3
        b1, b2 = (rcheck_at(n, cfg, site, layout) for site in (1, 2))
        rc = build_Rcheck(n, cfg)
        identity = TensorOp.identity(n, (AUX, AUX))
        return [
            check_equal("yang-baxter", r12 @ r13 @ r23, r23 @ r13 @ r12),
            check_equal("braid", b1 @ b2 @ b1, b2 @ b1 @ b2),
            check_equal(
                "hecke quadratic",
                (rc - cfg.q) @ (rc + cfg.power(-1)),
                TensorOp.zeros(n, (AUX, AUX)),
            ),
            check_equal("R inverse", R @ build_R_inverse(n, cfg), identity),
            check_equal("Ř inverse", rc @ build_Rcheck_inverse(n, cfg), identity),
        ]


class RttSuite(Suite):
    name = "rtt"

    def jobs(self, run):
        for N in run.module_sites:
            yield {"n": run.n, "N": N}

    def _run(self, run, n, N):
        rep = build_rep(n, N, run.cfg)
        outcomes = verify_rtt(rep)
        for lam in weights_of(rep):
            outcomes += verify_highest_weight(rep, lam)
        return outcomes


class HeckeSuite(Suite):
    name = "hecke"

    def jobs(self, run):
        for m in range(1, run.m_max + 1):
            yield {"n": run.n, "m": m}

    def _run(self, run, n, m):
        return verify_idempotents(HeckeAction(n, m, run.cfg))


class _ShapeSuite(Suite):
    # one job per module size and shape with at most m_max boxes

    def jobs(self, run):
        for N in run.module_sites:
            for shape in _shapes(run):
                yield {"n": run.n, "N": N, "mu": shape}


class CentralitySuite(_ShapeSuite):
    name = "centrality"

    def _run(self, run, n, N, mu):
        rep = build_rep(n, N, run.cfg)
        return verify_centrality(
            build_immanant_poly(rep, standard_tableaux(mu)[0]), rep
        )


class TableauIndependenceSuite(_ShapeSuite):
    name = "tableau-independence"

    def _run(self, run, n, N, mu):
        return verify_tableau_independence(mu, build_rep(n, N, run.cfg))


class EigenvaluesSuite(_ShapeSuite):
    name = "eigenvalues"

    def _run(self, run, n, N, mu):
        return verify_eigenvalues(mu, build_rep(n, N, run.cfg), run.zs)


class BasisSuite(Suite):
    name = "basis"

    def jobs(self, run):
        for z in run.zs:
            yield {"n": run.n, "z": z}

    def _run(self, run, n, z):
        return verify_basis_rank(n, run.cfg, run.m_max, run.basis_module_max, z)


class NewtonSuite(Suite):
    name = "newton"

    def jobs(self, run):
        for N in run.module_sites:
            yield {"n": run.n, "N": N, "M": run.truncation_order}

    def _run(self, run, n, N, M):
        rep = build_rep(n, N, run.cfg)
        outcomes = verify_newton(rep, M)
        for lam in weights_of(rep):
            outcomes += verify_eigenvalue_genfn(lam, rep, M)
            outcomes += verify_column_eigenvalues(lam, rep)
        outcomes += central_family(rep, run.m_max, M).check_commuting()
        return outcomes


class CapelliSuite(Suite):
    name = "capelli"

    def jobs(self, run):
        yield {"n": run.n, "part": "relations"}
        for m in range(1, run.capelli_m_max + 1):
            for tableau in tableaux_of_size(m, run.n):
                yield {"n": run.n, "part": "entries", "U": tableau}
            for shape in partitions(m, run.n):
                yield {"n": run.n, "part": "traced", "mu": shape}

    def _run(self, run, n, part, U=None, mu=None):
        cfg = run.cfg
        if part == "relations":
            vanishing = relation_self_check(n, cfg)
            outcomes = [
                Outcome(f"non-trivial {family}", not vanishes)
                for family, vanishes in vanishing.items()
            ]
            outcomes.append(Outcome("mirror mm/dd", mirror_matches(n, cfg)))
            return outcomes
        if part == "entries":
            return verify_capelli(U, cfg, n)
        return verify_traced_capelli(mu, cfg, n, module_sites=run.module_sites[0])


SUITES: dict[str, type[Suite]] = {
    suite.name: suite
    for suite in (
        RMatrixSuite,
        RttSuite,
        HeckeSuite,
        CentralitySuite,
        TableauIndependenceSuite,
        EigenvaluesSuite,
        BasisSuite,
        NewtonSuite,
        CapelliSuite,
    )
}


def run_suite(run: RunConfig) -> Report:
    """Run the selected suites and merge their checks in job order.

    Parameters
    ----------
    run : RunConfig
        validated run configuration

    Returns
    -------
    Report
        all checks in the order of the suites and their jobs, with the
        configuration attached.

    """
    parallel = run.jobs > 1
    with config.set_values(enable_dask=parallel, num_workers=run.jobs):
        results = []
        for name in run.suites:
            suite = SUITES[name](delay_entire_suite=parallel)
            results += [suite(run, params) for params in suite.jobs(run)]
        logger.info("Computing %s jobs on %s workers", len(results), run.jobs)
        computed = tasking.compute(*results)
    checks = [check for job in computed for check in job]
    report = Report(checks=checks, config=run.dump())
    passed = len(checks) - len(report.failures)
    logger.info("%s of %s checks passed", passed, len(checks))
    return report
