"""Verification reports and their JSON envelope."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"


@dataclass
class Report:
    check: str
    params: dict
    residual: float
    passed: bool
    runtime_ms: int = 0
    details: dict = field(default_factory=dict)

    @classmethod
    def from_residual(cls, check: str, params: dict, residual: float, tol: float) -> "Report":
        params = dict(params, tol=tol)
        return cls(check, params, float(residual), bool(residual <= tol))

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": jsonable(self.params),
            "residual": float(self.residual),
            "pass": bool(self.passed),
            "runtime_ms": int(self.runtime_ms),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={_short(v)}" for k, v in self.params.items())
        return f"{status} {self.check} [{params}] residual={self.residual:.3e}"


def _short(v) -> str:
    v = jsonable(v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"), sort_keys=True)
    return str(v)


def jsonable(obj):
    from .polyroots import fmt_complex

    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return fmt_complex(obj)
    if hasattr(obj, "item"):
        return jsonable(obj.item())
    return str(obj)


def envelope(reports) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "reports": [r.to_dict() for r in reports],
    }


def dumps(reports) -> str:
    return json.dumps(envelope(reports), indent=2, sort_keys=True)


@contextmanager
def timed(report_holder: list, enabled: bool = True):
    """Set runtime_ms on every report appended inside the block."""
    start = time.perf_counter()
    n0 = len(report_holder)
    yield
    if enabled:
        ms = int(round((time.perf_counter() - start) * 1000))
        for r in report_holder[n0:]:
            r.runtime_ms = ms
