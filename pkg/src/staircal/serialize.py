"""JSON serialization for parameters, competitors, and energies.

Every serializable object carries a "kind" tag so files are self-describing.
Floats round-trip exactly (shortest-repr encoding).  Schema violations raise
SchemaError with the path of the offending field, e.g. "regions[3].vertices".
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .energy1d import EnergyBreakdown, Interval, PureJump1D
from .energy2d import PiecewiseCell2D
from .geometry import InterfacePolyline, Polygon
from .params import Params1D, Params2D

__all__ = [
    "SchemaError",
    "dump_obj",
    "load_obj",
    "save_json",
    "load_json",
    "load_energy_input",
]


class SchemaError(ValueError):
    """A JSON document does not match the expected shape."""


def _fail(path: str, msg: str) -> None:
    raise SchemaError(f"{path}: {msg}")


def _num(d: dict, key: str, path: str) -> float:
    if key not in d:
        _fail(path, f"missing field '{key}'")
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fail(f"{path}.{key}", f"expected a number, got {type(v).__name__}")
    return float(v)


def _pairs(d: dict, key: str, path: str) -> list[tuple[float, float]]:
    if key not in d:
        _fail(path, f"missing field '{key}'")
    v = d[key]
    if not isinstance(v, list):
        _fail(f"{path}.{key}", "expected a list of [a, b] pairs")
    out = []
    for i, item in enumerate(v):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in item)
        ):
            _fail(f"{path}.{key}[{i}]", "expected a pair of numbers")
        out.append((float(item[0]), float(item[1])))
    return out


def dump_obj(obj: Any) -> dict:
    """Tagged JSON-ready dictionary for a supported object."""
    if isinstance(obj, Params1D):
        return {
            "kind": "params1d",
            "theta": obj.theta,
            "alpha": obj.alpha,
            "beta": obj.beta,
            "m": obj.m,
        }
    if isinstance(obj, Params2D):
        return {
            "kind": "params2d",
            "theta": obj.theta,
            "alpha": obj.alpha,
            "beta": obj.beta,
            "xi": [obj.xi[0], obj.xi[1]],
        }
    if isinstance(obj, PureJump1D):
        return {
            "kind": "pure_jump_1d",
            "base": obj.base,
            "jumps": [[p, h] for p, h in obj.jumps],
        }
    if isinstance(obj, PiecewiseCell2D):
        return {
            "kind": "piecewise_cells_2d",
            "regions": [
                {"vertices": poly.vertices.tolist(), "value": val}
                for poly, val in obj.regions
            ],
            "interfaces": [
                {"points": seg.points.tolist(), "left": seg.left, "right": seg.right}
                for seg in obj.interfaces
            ],
        }
    if isinstance(obj, EnergyBreakdown):
        return {
            "kind": "energy_breakdown",
            "jump_term": obj.jump_term,
            "fidelity_term": obj.fidelity_term,
            "total": obj.total,
        }
    raise TypeError(f"no serialization for {type(obj).__name__}")


def _load_cells(d: dict, path: str) -> PiecewiseCell2D:
    for key in ("regions", "interfaces"):
        if key not in d or not isinstance(d[key], list):
            _fail(path, f"missing or non-list field '{key}'")
    regions = []
    for i, r in enumerate(d["regions"]):
        rp = f"{path}.regions[{i}]"
        if not isinstance(r, dict):
            _fail(rp, "expected an object")
        verts = _pairs(r, "vertices", rp)
        if len(verts) < 3:
            _fail(f"{rp}.vertices", "polygon needs at least 3 vertices")
        try:
            poly = Polygon(np.asarray(verts))
        except SchemaError:
            raise
        except ValueError as exc:
            _fail(f"{rp}.vertices", str(exc))
        regions.append((poly, _num(r, "value", rp)))
    interfaces = []
    for i, s in enumerate(d["interfaces"]):
        sp = f"{path}.interfaces[{i}]"
        if not isinstance(s, dict):
            _fail(sp, "expected an object")
        pts = _pairs(s, "points", sp)
        if len(pts) < 2:
            _fail(f"{sp}.points", "polyline needs at least 2 points")
        try:
            seg = InterfacePolyline(
                np.asarray(pts), _num(s, "left", sp), _num(s, "right", sp)
            )
        except SchemaError:
            raise
        except ValueError as exc:
            _fail(sp, str(exc))
        interfaces.append(seg)
    try:
        return PiecewiseCell2D(tuple(regions), tuple(interfaces))
    except ValueError as exc:
        _fail(path, str(exc))
    raise AssertionError("unreachable")


def load_obj(d: Any, path: str = "$") -> Any:
    """Reconstruct an object from its tagged dictionary."""
    if not isinstance(d, dict):
        _fail(path, f"expected an object, got {type(d).__name__}")
    kind = d.get("kind")
    if kind == "params1d":
        try:
            return Params1D(
                _num(d, "theta", path), _num(d, "alpha", path),
                _num(d, "beta", path), _num(d, "m", path),
            )
        except SchemaError:
            raise
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "params2d":
        xi = d.get("xi")
        if not isinstance(xi, list) or len(xi) != 2:
            _fail(f"{path}.xi", "expected a pair [xi1, xi2]")
        try:
            return Params2D(
                _num(d, "theta", path), _num(d, "alpha", path),
                _num(d, "beta", path), (float(xi[0]), float(xi[1])),
            )
        except SchemaError:
            raise
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "pure_jump_1d":
        try:
            return PureJump1D(_num(d, "base", path), tuple(_pairs(d, "jumps", path)))
        except SchemaError:
            raise
        except ValueError as exc:
            _fail(path, str(exc))
    if kind == "piecewise_cells_2d":
        return _load_cells(d, path)
    if kind == "energy_breakdown":
        return EnergyBreakdown(_num(d, "jump_term", path), _num(d, "fidelity_term", path))
    _fail(path, f"unknown kind {kind!r}")
    raise AssertionError("unreachable")


def save_json(path: str, obj: Any) -> None:
    doc = dump_obj(obj) if not isinstance(obj, dict) else obj
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return load_obj(json.load(fh))


def load_energy_input(path: str):
    """Load an energy-evaluation document.

    1D: {"kind": "energy_input_1d", "params": <params1d>,
         "window": [a, b], "u": <pure_jump_1d>}
    2D: {"kind": "energy_input_2d", "params": <params2d>,
         "window": [x0, y0, x1, y1], "cells": <piecewise_cells_2d>}

    Returns (dimension, params, window, competitor) with window an Interval
    or a rectangle Polygon.
    """
    with open(path, "r", encoding="utf-8") as fh:
        d = json.load(fh)
    if not isinstance(d, dict):
        _fail("$", "expected a top-level object")
    kind = d.get("kind")
    if kind == "energy_input_1d":
        w = d.get("window")
        if not isinstance(w, list) or len(w) != 2:
            _fail("$.window", "expected [a, b]")
        p = load_obj(d.get("params"), "$.params")
        if not isinstance(p, Params1D):
            _fail("$.params", "expected kind 'params1d'")
        u = load_obj(d.get("u"), "$.u")
        if not isinstance(u, PureJump1D):
            _fail("$.u", "expected kind 'pure_jump_1d'")
        try:
            window = Interval(float(w[0]), float(w[1]))
        except SchemaError:
            raise
        except ValueError as exc:
            _fail("$.window", str(exc))
        return 1, p, window, u
    if kind == "energy_input_2d":
        w = d.get("window")
        if not isinstance(w, list) or len(w) != 4:
            _fail("$.window", "expected [x0, y0, x1, y1]")
        p = load_obj(d.get("params"), "$.params")
        if not isinstance(p, Params2D):
            _fail("$.params", "expected kind 'params2d'")
        cells = load_obj(d.get("cells"), "$.cells")
        if not isinstance(cells, PiecewiseCell2D):
            _fail("$.cells", "expected kind 'piecewise_cells_2d'")
        try:
            window = Polygon.rectangle(float(w[0]), float(w[1]), float(w[2]), float(w[3]))
        except SchemaError:
            raise
        except ValueError as exc:
            _fail("$.window", str(exc))
        return 2, p, window, cells
    _fail("$", f"unknown kind {kind!r} (expected energy_input_1d or energy_input_2d)")
    raise AssertionError("unreachable")
