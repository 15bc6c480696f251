"""Command line front end for the verification suites and data exports.

Subcommands
-----------
verify-1d   field identities, inequality scans, telescopic competitor trials
verify-2d   planar field hypotheses, chord bounds, minimality chain, slicing
export      plot-ready CSV/JSON: curve samples, jump-set polylines, field grids
energy      evaluate (or compare) energies of serialized functions
stress      randomized competitor suites at configurable scale
scan-theta  report-only sweep of the planar bounds over a theta grid

Configuration comes from flags, with an optional JSON config file
(``--config``) supplying defaults; flags win.  ``--out`` names the output
directory (fallback: the STAIRCAL_OUT_DIR environment variable, then the
working directory).  Exit status is 0 exactly when every non-exploratory
check passed; invalid configuration exits 2.  Exploratory scans never
affect the exit status.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .bistaircase import BiStaircase, bistaircase_jumpset
from .calibration1d import (
    CalibrationField1D,
    verify_equalities,
    verify_inequality_horizontal,
    verify_inequality_vertical,
)
from .calibration2d import (
    CalibrationField2D,
    explore_theta_scan,
    saturation_check,
    verify_prop_hypotheses,
)
from .curve import f_theta_build
from .energy1d import EnergyBreakdown, Interval, PureJump1D, jf_1d
from .energy2d import jf_2d
from .geometry import Polygon, rect_bounds
from .harness import (
    federer_slice_check,
    slicing_product_check,
    stress_2d,
    telescopic_stress,
)
from .params import Params1D, alpha_theta, canonical_h_v, normalize_params
from .psi import lemma_psi_verify
from .reports import (
    CheckReport,
    SuiteReport,
    _coerce,
    build_manifest,
    to_json,
    write_csv,
    write_json,
)
from .serialize import SchemaError, dump_obj, load_energy_input
from .staircase import Staircase1D

__all__ = ["main"]

ENV_OUT_DIR = "STAIRCAL_OUT_DIR"


class CliError(Exception):
    """Invalid configuration or input; maps to exit status 2."""


# ---------------------------------------------------------------------------
# option plumbing


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliError("config file must hold a JSON object of option values")
    return {str(k).replace("-", "_"): v for k, v in doc.items()}


def _opt(args: argparse.Namespace, cfg: dict, name: str, default):
    """Effective option value: flag beats config file beats default."""
    v = getattr(args, name, None)
    if v is not None:
        return v
    if name in cfg:
        return cfg[name]
    return default


def _parse_thetas(spec, allow_many: bool = True) -> list[float]:
    """Parse '0.5', '0,0.25,0.5', or 'start:stop:step' (stop inclusive)."""
    if isinstance(spec, (int, float)):
        vals = [float(spec)]
    else:
        s = str(spec).strip()
        if ":" in s:
            parts = s.split(":")
            if len(parts) != 3:
                raise CliError(f"theta range must be start:stop:step, got {spec!r}")
            a, b, st = (float(p) for p in parts)
            if st <= 0.0 or b < a:
                raise CliError(f"bad theta range {spec!r}")
            vals = [float(v) for v in np.arange(a, b + 0.5 * st, st)]
        elif "," in s:
            vals = [float(p) for p in s.split(",") if p.strip()]
        else:
            vals = [float(s)]
    if not vals:
        raise CliError("empty theta specification")
    for v in vals:
        if not 0.0 <= v < 1.0:
            raise CliError(f"theta must lie in [0, 1), got {v:g}")
    if len(vals) > 1 and not allow_many:
        raise CliError("this command takes a single theta value")
    return vals


def _parse_floats(spec: str, n: int, what: str) -> tuple[float, ...]:
    parts = [p for p in str(spec).replace(":", ",").split(",") if p.strip()]
    if len(parts) != n:
        raise CliError(f"{what} needs {n} numbers, got {spec!r}")
    return tuple(float(p) for p in parts)


def _out_dir(args: argparse.Namespace, cfg: dict) -> tuple[str, bool]:
    """Output directory and whether it was requested explicitly."""
    v = _opt(args, cfg, "out", None)
    if v is not None:
        return str(v), True
    env = os.environ.get(ENV_OUT_DIR)
    if env:
        return env, True
    return ".", False


def _write_report(doc: dict, name: str, out_dir: str, fmt: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    if fmt == "csv":
        path = os.path.join(out_dir, f"{name}.csv")
        rows = []
        for sub in doc.get("sub_reports", [doc]):
            for c in sub.get("checks", []):
                metric = "min_excess" if "min_excess" in c else "max_violation"
                rows.append(
                    [
                        sub.get("suite", doc.get("suite", name)),
                        c["check_name"],
                        c["pass"],
                        c["exploratory"],
                        metric,
                        c.get(metric, float("nan")),
                        c.get("tolerance", c.get("details", {}).get("tolerance", "")),
                        c.get("grid_spec", c.get("trials", "")),
                    ]
                )
        write_csv(
            path,
            ["suite", "check", "pass", "exploratory", "metric", "value", "tolerance", "grid"],
            rows,
        )
    else:
        path = os.path.join(out_dir, f"{name}.json")
        write_json(path, doc)
    return path


def _print_suite(doc: dict) -> None:
    for sub in doc.get("sub_reports", [doc]):
        if "sub_reports" in doc:
            print(f"-- {sub['suite']}")
        for c in sub.get("checks", []):
            tag = "pass" if c["pass"] else "FAIL"
            if c.get("exploratory"):
                tag = "info"
            metric = "min_excess" if "min_excess" in c else "max_violation"
            print(f"  [{tag}] {c['check_name']}: {metric}={c[metric]:.3e}")
    print(f"overall: {'PASS' if doc['overall_pass'] else 'FAIL'}")


def _pmap(fn, payloads: list, jobs: int) -> list:
    if jobs <= 1 or len(payloads) <= 1:
        return [fn(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=min(jobs, len(payloads))) as pool:
        return list(pool.map(fn, payloads))


def _timed(suite: SuiteReport, rep) -> None:
    suite.add(rep, time.perf_counter() - suite.timings.pop("_t0", time.perf_counter()))
    suite.timings["_t0"] = time.perf_counter()


# ---------------------------------------------------------------------------
# verify-1d


def _normalization_check(theta: float, tol: float = 1e-12) -> CheckReport:
    """canonical_h_v at the normalized parameters must return (1, 1)."""
    p = Params1D(theta, alpha_theta(theta), 3.0, 1.0)
    h, v = canonical_h_v(p)
    dev = max(abs(h - 1.0), abs(v - 1.0))
    return CheckReport(
        name="canonical_normalization",
        passed=dev <= tol,
        max_violation=dev,
        argmax=(h, v),
        grid=f"theta={theta:g}",
        details={"tolerance": tol},
    )


def _homothety_check(p: Params1D, tol: float = 1e-9) -> CheckReport:
    """Energies transform exactly under the normalizing change of variables."""
    nz = normalize_params(p)
    h, v = canonical_h_v(p)
    window = Interval(-3.0 * h, 3.0 * h)
    competitors = [
        Staircase1D(h, v, 0.0).restrict(window),
        PureJump1D(-0.7 * abs(v), ((-1.3 * h, 1.1), (0.4 * h, -0.6), (2.2 * h, 2.0))),
    ]
    worst = 0.0
    for u in competitors:
        e0 = jf_1d(window, u, p).total
        u_n = PureJump1D(
            nz.transform_value(u.base),
            tuple((nz.transform_point(t), nz.transform_value(hh)) for t, hh in u.jumps),
        )
        e1 = nz.scale * jf_1d(Interval(*nz.transform_window((window.a, window.b))), u_n, nz.params).total
        worst = max(worst, abs(e0 - e1) / max(1.0, abs(e0)))
    return CheckReport(
        name="homothety_reduction",
        passed=worst <= tol,
        max_violation=worst,
        grid=f"params=({p.theta:g},{p.alpha:g},{p.beta:g},{p.m:g})",
        details={"scale": nz.scale, "a": nz.a, "tolerance": tol},
    )


def _verify_1d_one(payload: tuple) -> dict:
    theta, alpha, beta, m, grid, trials, seed, slack = payload
    p = Params1D(theta, alpha, beta, m)
    suite = SuiteReport(
        name=f"verify_1d[theta={theta:g}]",
        manifest=build_manifest(
            command="verify-1d",
            theta=theta,
            alpha=alpha,
            beta=beta,
            m=m,
            grid=grid,
            trials=trials,
            seed=seed,
            slack=slack,
        ),
    )
    suite.timings["_t0"] = time.perf_counter()
    f = CalibrationField1D.for_theta(theta)
    _timed(suite, _normalization_check(theta))
    _timed(suite, _homothety_check(p))
    _timed(suite, verify_equalities(f))
    _timed(suite, verify_inequality_horizontal(f, n=grid, slack=slack))
    _timed(suite, verify_inequality_vertical(f, n=2 * grid - 1, slack=slack))
    for k in (1, 2, 3):
        _timed(suite, telescopic_stress(k, theta, n_trials=trials, seed=seed, slack=slack))
    suite.timings.pop("_t0", None)
    return _coerce(suite.to_dict())


def cmd_verify_1d(args: argparse.Namespace, cfg: dict) -> int:
    thetas = _parse_thetas(_opt(args, cfg, "theta", "0"))
    grid = int(_opt(args, cfg, "grid", 201))
    trials = int(_opt(args, cfg, "trials", 10_000))
    seed = int(_opt(args, cfg, "seed", 0))
    slack = float(_opt(args, cfg, "tol", 1e-9))
    alpha = _opt(args, cfg, "alpha", None)
    beta = float(_opt(args, cfg, "beta", 3.0))
    m = float(_opt(args, cfg, "m", 1.0))
    jobs = int(_opt(args, cfg, "jobs", 1))
    payloads = [
        (th, float(alpha) if alpha is not None else alpha_theta(th), beta, m, grid, trials, seed, slack)
        for th in thetas
    ]
    subs = _pmap(_verify_1d_one, payloads, jobs)
    if len(subs) == 1:
        doc = subs[0]
    else:
        doc = {
            "suite": "verify_1d_batch",
            "overall_pass": all(s["overall_pass"] for s in subs),
            "sub_reports": subs,
            "manifest": build_manifest(command="verify-1d", thetas=thetas, jobs=jobs),
        }
    out, _ = _out_dir(args, cfg)
    path = _write_report(doc, "verify_1d_report", out, _opt(args, cfg, "format", "json"))
    _print_suite(doc)
    print(f"wrote {path}")
    return 0 if doc["overall_pass"] else 1


# ---------------------------------------------------------------------------
# verify-2d


def _psi_sweep(
    theta: float, n_x: int, n_sigma: int, slack: float
) -> CheckReport:
    """Chord bound for the folded profile at every x-derived node pair."""
    f2 = CalibrationField2D.for_theta(theta)
    cub = f2.cubic
    worst = -np.inf
    arg = None
    table_ok = True
    for x in np.linspace(0.0, 1.0, n_x):
        c = float(cub.value(-x))
        d = float(cub.value(1.0 - x))
        rep = lemma_psi_verify(
            c, d, n=n_sigma, slack=slack, alpha=f2.alpha, rho=f2.rho
        )
        if rep.max_violation > worst:
            worst, arg = rep.max_violation, (x, c, d)
        table_ok = table_ok and rep.passed
    return CheckReport(
        name="psi_chord_grid",
        passed=bool(table_ok and worst <= slack),
        max_violation=float(worst),
        argmax=arg,
        grid=f"{n_x} x-values, {n_sigma}^2 sigma pairs each",
        details={"theta": theta, "tolerance": slack},
    )


def cmd_verify_2d(args: argparse.Namespace, cfg: dict) -> int:
    theta = _parse_thetas(_opt(args, cfg, "theta", "0"), allow_many=False)[0]
    if theta != 0.0:
        raise CliError(
            "verify-2d assertion mode requires theta=0; "
            "use --explore-theta for a report-only scan"
        )
    grid = int(_opt(args, cfg, "grid", 201))
    trials = int(_opt(args, cfg, "trials", 1000))
    seed = int(_opt(args, cfg, "seed", 0))
    tol = float(_opt(args, cfg, "tol", 1e-7))
    explore = _opt(args, cfg, "explore_theta", None)
    n_small = (grid + 1) // 2

    suite = SuiteReport(
        name="verify_2d",
        manifest=build_manifest(
            command="verify-2d",
            theta=theta,
            grid=grid,
            trials=trials,
            seed=seed,
            tol=tol,
            explore_theta=explore,
        ),
    )
    suite.timings["_t0"] = time.perf_counter()
    f2 = CalibrationField2D.for_theta(theta)
    _timed(suite, _psi_sweep(theta, n_small, 2 * grid - 1, 1e-9))
    _timed(suite, verify_prop_hypotheses(f2, nx=n_small, nz=grid))
    curve = f_theta_build(theta)
    _timed(suite, saturation_check(f2, curve))
    _timed(suite, slicing_product_check(n_trials=100, seed=seed))
    _timed(suite, federer_slice_check(n_trials=100, seed=seed))
    _timed(suite, stress_2d(n_trials=trials, seed=seed, theta=theta, tol=tol))
    if explore is not None:
        for rep in explore_theta_scan(_parse_thetas(explore), nx=n_small, nz=grid):
            _timed(suite, rep)
    suite.timings.pop("_t0", None)

    doc = _coerce(suite.to_dict())
    out, _ = _out_dir(args, cfg)
    path = _write_report(doc, "verify_2d_report", out, _opt(args, cfg, "format", "json"))
    _print_suite(doc)
    print(f"wrote {path}")
    return 0 if doc["overall_pass"] else 1


# ---------------------------------------------------------------------------
# export


def _export_curve(theta: float, rng: tuple[float, float], samples: int) -> tuple[list, list]:
    curve = f_theta_build(theta)
    xs = np.linspace(rng[0], rng[1], samples)
    fs = np.asarray(curve(xs))
    return list(xs), list(fs)


def cmd_export(args: argparse.Namespace, cfg: dict) -> int:
    what = args.what
    theta = _parse_thetas(_opt(args, cfg, "theta", "0"), allow_many=False)[0]
    fmt = _opt(args, cfg, "format", "csv" if what in ("curve", "afield") else "json")
    out, _ = _out_dir(args, cfg)
    samples_opt = _opt(args, cfg, "samples", None)
    if samples_opt is not None and int(samples_opt) <= 0:
        raise CliError("--samples must be positive")
    os.makedirs(out, exist_ok=True)

    if what == "curve":
        samples = int(samples_opt) if samples_opt is not None else 1201
        lo, hi = _parse_floats(_opt(args, cfg, "range", "-3:3"), 2, "--range")
        xs, fs = _export_curve(theta, (lo, hi), samples)
        if fmt == "csv":
            path = os.path.join(out, "curve.csv")
            write_csv(path, ["x", "f"], zip(xs, fs))
        else:
            path = os.path.join(out, "curve.json")
            write_json(path, {"kind": "curve_samples", "theta": theta, "x": xs, "f": fs})
    elif what == "jumpset":
        x0, y0, x1, y1 = _parse_floats(
            _opt(args, cfg, "bounds", "-2:-3:10:4.5"), 4, "--bounds"
        )
        chord_tol = float(_opt(args, cfg, "tol", 1e-6))
        b = BiStaircase(f_theta_build(theta))
        pieces = bistaircase_jumpset(
            b, Polygon.rectangle(x0, y0, x1, y1), chord_tol=chord_tol
        )
        if fmt == "csv":
            path = os.path.join(out, "jumpset.csv")
            rows = [
                (i, pt[0], pt[1], seg.left, seg.right)
                for i, seg in enumerate(pieces)
                for pt in seg.points
            ]
            write_csv(path, ["piece", "x", "y", "left", "right"], rows)
        else:
            path = os.path.join(out, "jumpset.json")
            write_json(
                path,
                {
                    "kind": "jump_set_polylines",
                    "theta": theta,
                    "window": [x0, y0, x1, y1],
                    "chord_tol": chord_tol,
                    "polylines": [
                        {
                            "points": seg.points.tolist(),
                            "left": seg.left,
                            "right": seg.right,
                        }
                        for seg in pieces
                    ],
                },
            )
    elif what == "afield":
        samples = int(samples_opt) if samples_opt is not None else 201
        x0, z0, x1, z1 = _parse_floats(
            _opt(args, cfg, "bounds", "-2:-3:2:3"), 4, "--bounds"
        )
        f2 = CalibrationField2D.for_theta(theta)
        xs = np.linspace(x0, x1, samples)
        zs = np.linspace(z0, z1, samples)
        xg, zg = np.meshgrid(xs, zs, indexing="ij")
        ag = np.asarray(f2.a(xg, zg))
        fg = np.asarray(f2.f(xg, zg))
        if fmt == "csv":
            path = os.path.join(out, "afield.csv")
            rows = zip(xg.ravel(), zg.ravel(), ag.ravel(), fg.ravel())
            write_csv(path, ["x", "z", "a", "f"], rows)
        else:
            path = os.path.join(out, "afield.json")
            write_json(
                path,
                {
                    "kind": "field_grid",
                    "theta": theta,
                    "x": list(xs),
                    "z": list(zs),
                    "a": ag.tolist(),
                    "f": fg.tolist(),
                },
            )
    elif what == "heatmap":
        samples = int(samples_opt) if samples_opt is not None else 201
        z0, z1 = _parse_floats(_opt(args, cfg, "range", "-3:3"), 2, "--range")
        f2 = CalibrationField2D.for_theta(theta)
        al, th = f2.alpha, f2.theta
        xs = np.linspace(0.0, 1.0, 101)
        zs = np.linspace(z0, z1, samples)
        av = np.asarray(f2.a(xs[:, None], zs[None, :]))
        fv = np.asarray(f2.f(xs[:, None], zs[None, :]))
        # worst over x of the squared-gap bound, per (z1, z2) pair
        viol = np.full((samples, samples), -np.inf)
        for i in range(len(xs)):
            da = av[i][None, :] - av[i][:, None]
            df = fv[i][None, :] - fv[i][:, None]
            rhs = al**2 * np.abs(zs[None, :] - zs[:, None]) ** (2.0 * th)
            np.maximum(viol, da * da + df * df - rhs, out=viol)
        if fmt == "csv":
            path = os.path.join(out, "heatmap.csv")
            zi, zj = np.meshgrid(zs, zs, indexing="ij")
            rows = zip(zi.ravel(), zj.ravel(), viol.ravel())
            write_csv(path, ["z1", "z2", "violation"], rows)
        else:
            path = os.path.join(out, "heatmap.json")
            write_json(
                path,
                {
                    "kind": "gap_bound_violation_grid",
                    "theta": theta,
                    "z": list(zs),
                    "violation": viol.tolist(),
                    "note": "max over 101 x-values of lhs - rhs; <= 0 means the bound holds",
                },
            )
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown export target {what!r}")
    print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# energy


def _energy_of(path: str):
    dim, p, window, comp = load_energy_input(path)
    if dim == 1:
        e = jf_1d(window, comp, p)
        w = [window.a, window.b]
    else:
        e = jf_2d(window, comp, p)
        w = list(rect_bounds(window))
    return {"path": path, "dimension": dim, "window": w, "energy": dump_obj(e)}


def cmd_energy(args: argparse.Namespace, cfg: dict) -> int:
    if args.input is None:
        raise CliError("energy requires --input FILE")
    doc = {"kind": "energy_report", "a": _energy_of(args.input)}
    if args.compare is not None:
        doc["b"] = _energy_of(args.compare)
        ea, eb = doc["a"]["energy"], doc["b"]["energy"]
        doc["difference"] = {
            "jump_term": ea["jump_term"] - eb["jump_term"],
            "fidelity_term": ea["fidelity_term"] - eb["fidelity_term"],
            "total": ea["total"] - eb["total"],
        }
    print(to_json(doc))
    out, explicit = _out_dir(args, cfg)
    if explicit:
        os.makedirs(out, exist_ok=True)
        path = os.path.join(out, "energy_report.json")
        write_json(path, doc)
        print(f"wrote {path}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# stress


def cmd_stress(args: argparse.Namespace, cfg: dict) -> int:
    kind = _opt(args, cfg, "kind", "both")
    theta = _parse_thetas(_opt(args, cfg, "theta", "0"), allow_many=False)[0]
    trials = int(_opt(args, cfg, "trials", 1000))
    seed = int(_opt(args, cfg, "seed", 0))
    tol = float(_opt(args, cfg, "tol", 1e-7))
    suite = SuiteReport(
        name="stress",
        manifest=build_manifest(
            command="stress", kind=kind, theta=theta, trials=trials, seed=seed, tol=tol
        ),
    )
    suite.timings["_t0"] = time.perf_counter()
    if kind in ("1d", "both"):
        for k in (1, 2, 3):
            _timed(suite, telescopic_stress(k, theta, n_trials=trials, seed=seed))
    if kind in ("2d", "both"):
        if theta != 0.0:
            raise CliError("2D stress requires theta=0 (see scan-theta for theta>0)")
        _timed(suite, stress_2d(n_trials=trials, seed=seed, theta=theta, tol=tol))
    suite.timings.pop("_t0", None)
    doc = _coerce(suite.to_dict())
    out, _ = _out_dir(args, cfg)
    path = _write_report(doc, "stress_report", out, _opt(args, cfg, "format", "json"))
    _print_suite(doc)
    print(f"wrote {path}")
    return 0 if doc["overall_pass"] else 1


# ---------------------------------------------------------------------------
# scan-theta


def _scan_one(payload: tuple) -> dict:
    theta, nx, nz = payload
    rep = explore_theta_scan([theta], nx=nx, nz=nz)[0]
    return _coerce(rep.to_dict())


def cmd_scan_theta(args: argparse.Namespace, cfg: dict) -> int:
    thetas = _parse_thetas(_opt(args, cfg, "theta", "0.1:0.9:0.1"))
    grid = int(_opt(args, cfg, "grid", 201))
    jobs = int(_opt(args, cfg, "jobs", 1))
    nx = (grid + 1) // 2
    checks = _pmap(_scan_one, [(th, nx, grid) for th in thetas], jobs)
    doc = {
        "suite": "scan_theta",
        "overall_pass": True,
        "checks": checks,
        "manifest": build_manifest(
            command="scan-theta", thetas=thetas, grid=grid, jobs=jobs
        ),
    }
    out, _ = _out_dir(args, cfg)
    path = _write_report(doc, "scan_theta_report", out, _opt(args, cfg, "format", "json"))
    for c in checks:
        print(f"  [info] {c['check_name']}: max_violation={c['max_violation']:.6e}")
    print("overall: PASS (report-only scan)")
    print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", help="theta value, comma list, or start:stop:step")
    common.add_argument("--alpha", type=float, help="jump weight (default: normalized)")
    common.add_argument("--beta", type=float, help="fidelity weight (default 3)")
    common.add_argument("--m", type=float, help="1D forcing slope (default 1)")
    common.add_argument("--xi", help="2D forcing gradient 'a,b' (default 1,0)")
    common.add_argument("--grid", type=int, help="base grid resolution (default 201)")
    common.add_argument("--tol", type=float, help="assertion slack override")
    common.add_argument("--seed", type=int, help="RNG seed (default 0)")
    common.add_argument("--jobs", type=int, help="worker processes (default 1)")
    common.add_argument("--out", help=f"output directory (default ${ENV_OUT_DIR} or .)")
    common.add_argument("--format", choices=["json", "csv"], help="report format")
    common.add_argument("--config", help="JSON file of option defaults; flags win")

    ap = argparse.ArgumentParser(
        prog="staircal",
        description="Verification suites for a staircase minimality calibration.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-1d", parents=[common], help="1D field and competitor suite")
    p.add_argument("--trials", type=int, help="competitors per telescopic window (default 10000)")
    p.set_defaults(fn=cmd_verify_1d)

    p = sub.add_parser("verify-2d", parents=[common], help="planar field and minimality suite")
    p.add_argument("--trials", type=int, help="stress competitors (default 1000)")
    p.add_argument("--explore-theta", dest="explore_theta", help="report-only theta grid")
    p.set_defaults(fn=cmd_verify_2d)

    p = sub.add_parser("export", parents=[common], help="write plot-ready data files")
    p.add_argument("what", choices=["curve", "jumpset", "afield", "heatmap"])
    p.add_argument("--samples", type=int, help="sample count (curve: total, grids: per axis)")
    p.add_argument("--range", dest="range", help="lo:hi interval (curve, heatmap)")
    p.add_argument("--bounds", help="x0:y0:x1:y1 window (jumpset, afield)")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("energy", parents=[common], help="evaluate serialized functions")
    p.add_argument("--input", help="JSON energy-input document")
    p.add_argument("--compare", help="second document; report the difference")
    p.set_defaults(fn=cmd_energy)

    p = sub.add_parser("stress", parents=[common], help="randomized competitor suites")
    p.add_argument("--kind", choices=["1d", "2d", "both"], help="which suites (default both)")
    p.add_argument("--trials", type=int, help="trials per suite (default 1000)")
    p.set_defaults(fn=cmd_stress)

    p = sub.add_parser("scan-theta", parents=[common], help="report-only theta sweep")
    p.set_defaults(fn=cmd_scan_theta)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _load_config(getattr(args, "config", None))
        return args.fn(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"error: input does not match its schema: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
