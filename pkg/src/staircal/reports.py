"""Structured results for verification runs.

Every numeric check produces a CheckReport (max violation over a grid) or a
TrialReport (min excess over randomized trials).  A SuiteReport bundles them
with a reproducibility manifest and wall-clock timings.  Exploratory entries
are informational: they never affect the overall pass flag.
"""

from __future__ import annotations

import csv
import json
import platform
import sys
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from ._version import __version__

__all__ = [
    "CheckReport",
    "TrialReport",
    "SuiteReport",
    "build_manifest",
    "to_json",
    "write_json",
    "write_csv",
]


def _coerce(obj: Any) -> Any:
    """Make an object JSON-serializable (numpy scalars/arrays, tuples, reports)."""
    if isinstance(obj, (CheckReport, TrialReport, SuiteReport)):
        return _coerce(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _coerce(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_coerce(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_coerce(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


@dataclass
class CheckReport:
    """Outcome of one grid/identity check."""

    name: str
    passed: bool
    max_violation: float
    argmax: tuple | None = None
    grid: str = ""
    exploratory: bool = False
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check_name": self.name,
            "pass": bool(self.passed),
            "max_violation": float(self.max_violation),
            "argmax_point": self.argmax,
            "grid_spec": self.grid,
            "exploratory": bool(self.exploratory),
            "details": self.details,
        }


@dataclass
class TrialReport:
    """Outcome of a randomized competitor suite."""

    name: str
    trials: int
    min_excess: float
    argmin: Any = None
    passed: bool = True
    tolerance: float = 0.0
    exploratory: bool = False
    details: dict = field(default_factory=dict)

    @classmethod
    def from_excess(
        cls,
        name: str,
        trials: int,
        min_excess: float,
        argmin: Any,
        tolerance: float,
        **kw: Any,
    ) -> "TrialReport":
        # pass criterion pinned to the report so it is self-describing
        passed = trials == 0 or min_excess >= -tolerance
        return cls(name, trials, float(min_excess), argmin, passed, tolerance, **kw)

    def to_dict(self) -> dict:
        return {
            "check_name": self.name,
            "pass": bool(self.passed),
            "trials": int(self.trials),
            "min_excess": float(self.min_excess),
            "argmin": self.argmin,
            "tolerance": float(self.tolerance),
            "exploratory": bool(self.exploratory),
            "details": self.details,
        }


@dataclass
class SuiteReport:
    """Bundle of check results plus manifest and timings."""

    name: str
    checks: list = field(default_factory=list)
    manifest: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks if not c.exploratory)

    def add(self, check: CheckReport | TrialReport, seconds: float | None = None) -> None:
        self.checks.append(check)
        if seconds is not None:
            self.timings[check.name] = float(seconds)

    def to_dict(self, *, stable_only: bool = False) -> dict:
        out = {
            "suite": self.name,
            "overall_pass": bool(self.overall_pass),
            "checks": [c.to_dict() for c in self.checks],
        }
        if not stable_only:
            out["manifest"] = self.manifest
            out["timings"] = self.timings
        return out


def build_manifest(**kw: Any) -> dict:
    """Reproducibility stamp: code/runtime versions plus run parameters."""
    man = {
        "code_version": __version__,
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "platform": platform.platform(),
    }
    man.update(kw)
    return man


def to_json(obj: Any) -> str:
    return json.dumps(_coerce(obj), indent=2, sort_keys=True)


def write_json(path: str, obj: Any) -> None:
    with open(path, "w") as fh:
        fh.write(to_json(obj))
        fh.write("\n")


def write_csv(path: str, header: Iterable[str], rows: Iterable[Iterable[Any]]) -> None:
    """CSV with '.' decimals and 17-significant-digit doubles."""

    def fmt(v: Any) -> str:
        if isinstance(v, (float, np.floating)):
            return "%.17g" % float(v)
        return str(v)

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(list(header))
        for row in rows:
            w.writerow([fmt(v) for v in row])
