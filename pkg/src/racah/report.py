"""Verification reports shared by every identity checker."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Mapping

from .exact import Poly1, Poly3, format_scalar
from .operators import DiffOp1, DiffOp3, Matrix

PASS = "pass"
FAIL = "fail"


def is_zero(value: Any) -> bool:
    if isinstance(value, (int, Fraction)):
        return value == 0
    if isinstance(value, (list, tuple)):
        return all(is_zero(v) for v in value)
    return value.is_zero()


def to_jsonable(value: Any) -> Any:
    """JSON form of a residual: operator, polynomial, matrix or scalar."""
    if value is None:
        return None
    if isinstance(value, (int, Fraction)):
        return format_scalar(Fraction(value))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return {"type": type(value).__name__, "value": value.to_json()}
    raise TypeError(f"cannot serialise residual of type {type(value).__name__}")


_DECODERS = {
    "Poly1": Poly1.from_json,
    "Poly3": Poly3.from_json,
    "DiffOp1": DiffOp1.from_json,
    "DiffOp3": DiffOp3.from_json,
    "Matrix": Matrix.from_json,
}


def from_jsonable(data: Any) -> Any:
    if data is None:
        return None
    if isinstance(data, str):
        return Fraction(data)
    if isinstance(data, list):
        return [from_jsonable(v) for v in data]
    if data["type"] == "SquaredEntryMatrix":
        from .su2 import SquaredEntryMatrix

        return SquaredEntryMatrix.from_json(data["value"])
    return _DECODERS[data["type"]](data["value"])


@dataclass
class VerificationReport:
    check_name: str
    params: Any
    status: str
    residual: Any = None
    elapsed_ms: float | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self, timing: bool = True) -> dict:
        params = self.params.to_json() if hasattr(self.params, "to_json") else self.params
        return {
            "check_name": self.check_name,
            "params": params,
            "status": self.status,
            "residual": to_jsonable(self.residual),
            "elapsed_ms": round(self.elapsed_ms, 3)
            if timing and self.elapsed_ms is not None
            else None,
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        from .su11 import RacahParams

        params = data["params"]
        if isinstance(params, dict) and set(params) == {"nu1", "nu2", "nu3", "M"}:
            params = RacahParams.from_json(params)
        return cls(
            check_name=data["check_name"],
            params=params,
            status=data["status"],
            residual=from_jsonable(data["residual"]),
            elapsed_ms=data["elapsed_ms"],
            metadata=data.get("metadata", {}),
        )


@contextmanager
def stopwatch() -> Iterator[list[float]]:
    """Yield a one-element list that receives the elapsed milliseconds."""
    box = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - start) * 1000.0


def residual_report(
    check_name: str,
    params: Any,
    residuals: Mapping[str, Any],
    elapsed_ms: float | None = None,
    metadata: dict | None = None,
) -> VerificationReport:
    """Pass iff every named residual is zero.

    On failure the first nonzero residual is attached and every failing
    name is listed under ``metadata["failed"]``.
    """
    failed = [name for name, r in residuals.items() if not is_zero(r)]
    meta = dict(metadata or {})
    meta["relations"] = list(residuals)
    if failed:
        meta["failed"] = failed
    return VerificationReport(
        check_name=check_name,
        params=params,
        status=FAIL if failed else PASS,
        residual=residuals[failed[0]] if failed else None,
        elapsed_ms=elapsed_ms,
        metadata=meta,
    )


def combine(check_name: str, params: Any, reports: list[VerificationReport]) -> VerificationReport:
    """Fold sub-reports into one named check (used by the CLI suite)."""
    failed = [r for r in reports if not r.passed]
    elapsed = sum(r.elapsed_ms or 0.0 for r in reports)
    return VerificationReport(
        check_name=check_name,
        params=params,
        status=FAIL if failed else PASS,
        residual=failed[0].residual if failed else None,
        elapsed_ms=elapsed,
        metadata={
            "parts": {r.check_name: r.status for r in reports},
            **({"failed": [r.check_name for r in failed]} if failed else {}),
        },
    )
