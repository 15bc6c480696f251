"""Round-trip and schema-diagnostic tests for the JSON layer."""

import json
import pathlib

import numpy as np
import pytest

from staircal import (
    EnergyBreakdown,
    InterfacePolyline,
    Params1D,
    Params2D,
    PiecewiseCell2D,
    Polygon,
    PureJump1D,
    SchemaError,
    dump_obj,
    jf_1d,
    load_energy_input,
    load_json,
    load_obj,
    save_json,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"


def _roundtrip(obj):
    return load_obj(json.loads(json.dumps(dump_obj(obj))))


def test_params_roundtrip_exact():
    p1 = Params1D(0.3, 1.2345678901234567, 3.0, -0.7)
    q1 = _roundtrip(p1)
    assert (q1.theta, q1.alpha, q1.beta, q1.m) == (p1.theta, p1.alpha, p1.beta, p1.m)
    p2 = Params2D(0.6, 0.125, 2.0, (0.3, -0.4))
    q2 = _roundtrip(p2)
    assert q2.xi == p2.xi and q2.theta == p2.theta


def test_pure_jump_roundtrip_exact():
    u = PureJump1D(-2.0, ((-1.0, 2.0), (0.3333333333333333, -0.1)))
    v = _roundtrip(u)
    assert v.base == u.base
    assert v.jumps == u.jumps


def test_cells_roundtrip_exact():
    cells = PiecewiseCell2D(
        (
            (Polygon.rectangle(0.0, 0.0, 1.0, 1.0), 0.0),
            (Polygon.rectangle(1.0, 0.0, 2.0, 1.0), 2.0),
        ),
        (InterfacePolyline(np.array([[1.0, 0.0], [1.0, 1.0]]), 0.0, 2.0),),
    )
    back = _roundtrip(cells)
    assert len(back.regions) == 2
    for (pa, va), (pb, vb) in zip(back.regions, cells.regions):
        assert va == vb
        assert np.array_equal(pa.vertices, pb.vertices)
    seg_a, seg_b = back.interfaces[0], cells.interfaces[0]
    assert np.array_equal(seg_a.points, seg_b.points)
    assert (seg_a.left, seg_a.right) == (seg_b.left, seg_b.right)


def test_energy_breakdown_roundtrip():
    e = EnergyBreakdown(8.0, 6.0)
    back = _roundtrip(e)
    assert (back.jump_term, back.fidelity_term, back.total) == (8.0, 6.0, 14.0)


def test_schema_errors_carry_paths():
    with pytest.raises(SchemaError, match=r"\$\.jumps\[1\]"):
        load_obj({"kind": "pure_jump_1d", "base": 0.0, "jumps": [[0.0, 1.0], [1.0]]})
    with pytest.raises(SchemaError, match=r"missing field 'theta'"):
        load_obj({"kind": "params1d", "alpha": 1.0, "beta": 1.0, "m": 1.0})
    with pytest.raises(SchemaError, match=r"\$\.regions\[0\]\.vertices"):
        load_obj(
            {
                "kind": "piecewise_cells_2d",
                "regions": [{"vertices": [[0, 0], [1, 0]], "value": 0.0}],
                "interfaces": [],
            }
        )
    with pytest.raises(SchemaError, match="unknown kind"):
        load_obj({"kind": "mystery"})
    with pytest.raises(SchemaError):
        load_obj(42)


def test_validation_errors_becoming_schema_errors():
    # constructor-level rejections surface as SchemaError too
    with pytest.raises(SchemaError, match="strictly increasing"):
        load_obj(
            {"kind": "pure_jump_1d", "base": 0.0, "jumps": [[1.0, 1.0], [0.5, 1.0]]}
        )
    with pytest.raises(SchemaError, match=r"theta must lie"):
        load_obj({"kind": "params1d", "theta": 1.5, "alpha": 1.0, "beta": 1.0, "m": 1.0})


def test_save_and_load_json(tmp_path):
    u = PureJump1D(0.5, ((0.0, 1.0),))
    path = tmp_path / "u.json"
    save_json(str(path), u)
    v = load_json(str(path))
    assert isinstance(v, PureJump1D)
    assert v.jumps == u.jumps and v.base == u.base


def test_golden_energy_input_evaluates_to_14():
    path = GOLDEN / "staircase_energy_input.json"
    dim, p, window, u = load_energy_input(str(path))
    assert dim == 1
    e = jf_1d(window, u, p)
    assert e.total == 14.0
    assert e.jump_term == 8.0
    assert e.fidelity_term == 6.0
    # the on-disk format is stable: re-serializing reproduces the file
    raw = json.loads(path.read_text())
    doc = {
        "kind": "energy_input_1d",
        "params": dump_obj(p),
        "window": [window.a, window.b],
        "u": dump_obj(u),
    }
    assert json.loads(json.dumps(doc)) == raw


def test_energy_input_diagnostics(tmp_path):
    bad = {"kind": "energy_input_1d", "params": {"kind": "params1d"}, "window": [0, 1]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(SchemaError, match=r"\$\.params"):
        load_energy_input(str(path))
    bad2 = {
        "kind": "energy_input_1d",
        "params": dump_obj(Params1D(0.0, 1.0, 1.0, 1.0)),
        "window": [0, 1],
    }
    path2 = tmp_path / "bad2.json"
    path2.write_text(json.dumps(bad2))
    with pytest.raises(SchemaError, match=r"\$\.u"):
        load_energy_input(str(path2))
