"""End-to-end tests of the command-line interface via subprocesses."""

import json
import os
import pathlib
import subprocess
import sys

import pytest

GOLDEN = pathlib.Path(__file__).parent / "golden"
ENERGY_DOC = GOLDEN / "staircase_energy_input.json"


def run_cli(*args, env_extra=None, cwd=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "staircal", *args],
        capture_output=True,
        text=True,
        env=env,
        cwd=cwd,
        timeout=600,
    )


def strip_volatile(doc):
    """Drop per-run metadata so reports can be compared across runs."""
    if isinstance(doc, dict):
        return {
            k: strip_volatile(v)
            for k, v in doc.items()
            if k not in ("manifest", "timings", "seconds")
        }
    if isinstance(doc, list):
        return [strip_volatile(v) for v in doc]
    return doc


def test_verify_1d_passes_and_is_reproducible(tmp_path):
    args = (
        "verify-1d",
        "--theta",
        "0.5",
        "--grid",
        "31",
        "--trials",
        "20",
        "--seed",
        "7",
    )
    r1 = run_cli(*args, "--out", str(tmp_path / "a"))
    assert r1.returncode == 0, r1.stderr
    r2 = run_cli(*args, "--out", str(tmp_path / "b"))
    assert r2.returncode == 0
    d1 = json.loads((tmp_path / "a" / "verify_1d_report.json").read_text())
    d2 = json.loads((tmp_path / "b" / "verify_1d_report.json").read_text())
    assert d1["overall_pass"] is True
    assert strip_volatile(d1) == strip_volatile(d2)
    assert "manifest" in d1 and "code_version" in d1["manifest"]
    names = [c["check_name"] for c in d1["checks"]]
    assert "calibration_1d_equalities" in names
    assert any(n.startswith("telescopic_k") for n in names)


def test_verify_1d_theta_batch_and_jobs(tmp_path):
    r = run_cli(
        "verify-1d",
        "--theta",
        "0:0.5:0.25",
        "--grid",
        "21",
        "--trials",
        "5",
        "--jobs",
        "2",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "verify_1d_report.json").read_text())
    assert doc["suite"] == "verify_1d_batch"
    assert len(doc["sub_reports"]) == 3
    assert doc["overall_pass"] is True


def test_verify_1d_csv_format(tmp_path):
    r = run_cli(
        "verify-1d",
        "--theta",
        "0",
        "--grid",
        "21",
        "--trials",
        "5",
        "--format",
        "csv",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    text = (tmp_path / "verify_1d_report.csv").read_text()
    lines = text.strip().splitlines()
    assert lines[0].startswith("suite,check,pass")
    assert len(lines) > 3
    assert "." in lines[1]  # decimal values use a dot


def test_verify_2d_smoke_and_explore(tmp_path):
    r = run_cli(
        "verify-2d",
        "--grid",
        "41",
        "--trials",
        "3",
        "--explore-theta",
        "0.5",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "verify_2d_report.json").read_text())
    assert doc["overall_pass"] is True
    expl = [c for c in doc["checks"] if c.get("exploratory")]
    assert expl, "exploratory scan entries missing"
    # the generalized bound fails for theta=0.5; that must not affect exit 0
    assert any(c["max_violation"] > 1.0 for c in expl)


def test_verify_2d_rejects_nonzero_theta():
    r = run_cli("verify-2d", "--theta", "0.5")
    assert r.returncode == 2
    assert "explore-theta" in r.stderr


def test_theta_one_rejected():
    r = run_cli("verify-1d", "--theta", "1.0")
    assert r.returncode == 2
    assert "theta" in r.stderr


def test_energy_golden_values(tmp_path):
    r = run_cli("energy", "--input", str(ENERGY_DOC))
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["a"]["energy"]["total"] == 14.0
    assert doc["a"]["energy"]["jump_term"] == 8.0
    assert doc["a"]["dimension"] == 1


def test_energy_compare(tmp_path):
    flat = {
        "kind": "energy_input_1d",
        "params": {"kind": "params1d", "theta": 0.0, "alpha": 4.0, "beta": 3.0, "m": 1.0},
        "window": [-1.0, 1.0],
        "u": {"kind": "pure_jump_1d", "base": 0.0, "jumps": []},
    }
    p = tmp_path / "flat.json"
    p.write_text(json.dumps(flat))
    r = run_cli("energy", "--input", str(p), "--compare", str(ENERGY_DOC))
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["a"]["energy"]["total"] == 2.0
    assert doc["b"]["energy"]["total"] == 14.0
    assert doc["difference"]["total"] == -12.0


def test_energy_schema_violation_exit_2(tmp_path):
    bad = {
        "kind": "energy_input_1d",
        "params": {"kind": "params1d", "theta": 0.0, "alpha": 4.0, "beta": 3.0, "m": 1.0},
        "window": [-1.0, 1.0],
        "u": {"kind": "pure_jump_1d", "base": 0.0, "jumps": [[0.5, 1.0], [0.25, 1.0]]},
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    r = run_cli("energy", "--input", str(p))
    assert r.returncode == 2
    assert "error:" in r.stderr


def test_energy_2d_unit_square(tmp_path):
    doc = {
        "kind": "energy_input_2d",
        "params": {
            "kind": "params2d",
            "theta": 0.0,
            "alpha": 4.0,
            "beta": 3.0,
            "xi": [1.0, 0.0],
        },
        "window": [0.0, 0.0, 1.0, 1.0],
        "cells": {
            "kind": "piecewise_cells_2d",
            "regions": [
                {
                    "vertices": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
                    "value": 0.0,
                }
            ],
            "interfaces": [],
        },
    }
    p = tmp_path / "sq.json"
    p.write_text(json.dumps(doc))
    r = run_cli("energy", "--input", str(p))
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert out["a"]["energy"]["total"] == pytest.approx(1.0, abs=1e-12)
    assert out["a"]["dimension"] == 2


def test_export_curve_csv(tmp_path):
    r = run_cli(
        "export",
        "curve",
        "--samples",
        "101",
        "--range",
        "0:1",
        "--format",
        "csv",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    lines = (tmp_path / "curve.csv").read_text().strip().splitlines()
    assert lines[0] == "x,f"
    assert len(lines) == 102
    assert float(lines[1].split(",")[0]) == 0.0
    # 17 significant digits on non-trivial values
    mid = lines[51].split(",")[1]
    assert len(mid.replace("-", "").replace(".", "").lstrip("0")) >= 15


def test_export_jumpset_json(tmp_path):
    r = run_cli(
        "export",
        "jumpset",
        "--bounds=-0.5:-2:1.5:2",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "jumpset.json").read_text())
    assert doc["kind"] == "jump_set_polylines"
    assert len(doc["polylines"]) >= 3
    for seg in doc["polylines"]:
        assert abs(seg["right"] - seg["left"]) in (1.0, 2.0)


def test_export_zero_samples_exit_2(tmp_path):
    r = run_cli("export", "curve", "--samples", "0", "--out", str(tmp_path))
    assert r.returncode == 2


def test_export_heatmap_small(tmp_path):
    r = run_cli(
        "export",
        "heatmap",
        "--samples",
        "11",
        "--range=-1:1",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "heatmap.json").read_text())
    assert doc["kind"] == "gap_bound_violation_grid"
    flat = [v for row in doc["violation"] for v in row]
    assert max(flat) <= 1e-9  # the bound holds at theta = 0


def test_config_file_with_flag_override(tmp_path):
    cfg = {"theta": "0.25", "grid": 21, "trials": 5, "out": str(tmp_path / "cfgdir")}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    r = run_cli(
        "verify-1d",
        "--config",
        str(cfg_path),
        "--theta",
        "0.5",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "verify_1d_report.json").read_text())
    assert doc["manifest"]["theta"] == 0.5  # flag beats config
    assert doc["manifest"]["trials"] == 5  # config beats default


def test_out_dir_env_fallback(tmp_path):
    r = run_cli(
        "verify-1d",
        "--theta",
        "0",
        "--grid",
        "21",
        "--trials",
        "2",
        env_extra={"STAIRCAL_OUT_DIR": str(tmp_path)},
    )
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "verify_1d_report.json").exists()


def test_stress_subcommand(tmp_path):
    r = run_cli(
        "stress",
        "--kind",
        "both",
        "--trials",
        "4",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "stress_report.json").read_text())
    assert doc["overall_pass"] is True


def test_scan_theta_always_exit_zero(tmp_path):
    r = run_cli(
        "scan-theta",
        "--theta",
        "0.3,0.6",
        "--grid",
        "31",
        "--out",
        str(tmp_path),
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "scan_theta_report.json").read_text())
    assert doc["overall_pass"] is True
    assert len(doc["checks"]) == 2
    assert all(c["exploratory"] for c in doc["checks"])
    # violations are recorded even though the exit code stays 0
    assert any(c["max_violation"] > 1.0 for c in doc["checks"])


def test_console_script_entry_point():
    r = subprocess.run(
        ["staircal", "--help"], capture_output=True, text=True, timeout=60
    )
    assert r.returncode == 0
    assert "verify-1d" in r.stdout
