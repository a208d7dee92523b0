"""Verification records and their renderings."""

# Standard library
import dataclasses as dc
import json
import logging
from collections.abc import Iterable, Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal

# Local
from .combinatorics import StandardTableau, YoungDiagram
from .tensor import TensorOp

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


@dc.dataclass(frozen=True)
class Outcome:
    """Result of a single mathematical check.

    Attributes
    ----------
    name : str
        short label of the identity that was checked
    passed : bool
        whether it holds exactly
    witness : Any
        serialisable evidence of a failure, e.g. the violating operator entries
    values : Any
        exact values computed along the way, e.g. eigenvalue tables

    """

    name: str
    passed: bool
    witness: Any = None
    values: Any = None


def check_equal(name: str, lhs: Any, rhs: Any, values: Any = None) -> Outcome:
    """Compare two exact objects and keep their difference as the witness."""
    if lhs == rhs:
        return Outcome(name, True, values=values)
    if isinstance(lhs, TensorOp) and isinstance(rhs, TensorOp):
        witness = serialise(lhs - rhs)
    else:
        witness = {"lhs": serialise(lhs), "rhs": serialise(rhs)}
    return Outcome(name, False, witness=witness, values=values)


def serialise(value: Any) -> Any:
    """Convert exact objects into JSON compatible values.

    Rationals become ``"p/r"`` strings, operators become sparse entry lists.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, (YoungDiagram, StandardTableau)):
        return str(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, TensorOp):
        return {
            "n": value.n,
            "layout": list(value.layout),
            "entries": [[i, j, str(v)] for (i, j), v in value.entries().items()],
        }
    if isinstance(value, Mapping):
        return {str(k): serialise(v) for k, v in value.items()}
    if isinstance(value, Iterable):
        return [serialise(v) for v in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


@dc.dataclass
class Check:
    suite: str
    params: dict[str, Any]
    status: Literal["pass", "fail"]
    witness: Any = None
    time_ms: int | None = None
    values: Any = None

    @classmethod
    def from_outcome(
        cls,
        suite: str,
        params: dict[str, Any],
        outcome: Outcome,
        time_ms: int | None = None,
    ) -> "Check":
        return cls(
            suite=suite,
            params={**params, "check": outcome.name},
            status="pass" if outcome.passed else "fail",
            witness=outcome.witness,
            time_ms=time_ms,
            values=outcome.values,
        )

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "suite": self.suite,
            "params": serialise(self.params),
            "status": self.status,
        }
        if self.witness is not None:
            result["witness"] = serialise(self.witness)
        result["time_ms"] = self.time_ms
        if self.values is not None:
            result["values"] = serialise(self.values)
        return result


@dc.dataclass
class Report:
    checks: list[Check] = dc.field(default_factory=list)
    config: dict[str, Any] | None = None
    version: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {"version": self.version}
        if self.config is not None:
            result["config"] = serialise(self.config)
        result["checks"] = [check.to_dict() for check in self.checks]
        return result


def _render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), separators=(",", ":"), ensure_ascii=False)


def _render_text(report: Report) -> str:
    lines = []
    for check in report.checks:
        params = " ".join(f"{k}={serialise(v)}" for k, v in check.params.items())
        line = f"{check.status.upper():4}  {check.suite:22}  {params}"
        if check.values is not None:
            line += f"  values={json.dumps(serialise(check.values))}"
        if check.time_ms is not None:
            line += f"  [{check.time_ms} ms]"
        lines.append(line)
    total = len(report.checks)
    lines.append(f"{total - len(report.failures)}/{total} checks passed")
    return "\n".join(lines)


def emit_table(
    report: Report,
    format: Literal["json", "text"] = "json",
    path: Path | str | None = None,
) -> str:
    """Render a report and optionally write it to a file.

    Parameters
    ----------
    report : Report
        the verification report
    format : {"json", "text"}
        canonical compact JSON or a human readable table
    path : Path | str, optional
        destination file, nothing is written when omitted

    Returns
    -------
    str
        the rendered report

    """
    if format == "json":
        rendered = _render_json(report)
    elif format == "text":
        rendered = _render_text(report)
    else:
        raise ValueError(f"unknown report format {format}")
    if path is not None:
        Path(path).write_text(rendered + "\n", encoding="utf-8")
        logger.info("Wrote %s report to %s", format, path)
    return rendered
