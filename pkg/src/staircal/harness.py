"""Randomized and exhaustive minimality experiments.

The drivers here attack the staircase and bi-staircase minimizers from
several independent directions: the 1D lower bound against large random
competitor batches, an exhaustive dynamic program over a position/level
grid, spot checks of the first-order optimality conditions, slice
comparisons between the 2D and 1D energies, and a 2D perturbation stress
suite around the explicit minimizer.  Every driver is deterministic given
its seed and returns a structured report.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bistaircase import BiStaircase, cells_from_samples, curve_samples, jf_semi_analytic
from .calibration1d import telescopic_bound
from .calibration2d import CalibrationField2D, verify_minimality_chain
from .curve import InterfaceCurve, f_theta_build
from .energy1d import Interval, PureJump1D, jf_1d
from .energy2d import PiecewiseCell2D, jf_2d
from .geometry import InterfacePolyline, Polygon, rect_bounds
from .params import Params1D, Params2D
from .reports import CheckReport, TrialReport
from .staircase import Staircase1D

__all__ = [
    "random_competitor_1d",
    "telescopic_stress",
    "BruteForceResult",
    "brute_force_1d",
    "jump_symmetry_test",
    "equidistance_test",
    "extend_1d_to_2d",
    "slicing_product_check",
    "federer_slice_check",
    "jump_merge_test",
    "StressSetup",
    "stress_setup",
    "stress_2d",
]


# ---------------------------------------------------------------------------
# 1D competitor generation and the telescopic lower-bound stress


def random_competitor_1d(
    rng: np.random.Generator, k: int, collar: float = 0.1
) -> PureJump1D:
    """Random competitor on (-(2k+1), 2k+1) matching the staircase collars.

    Three families are mixed: jittered staircases, many-jump noise with
    signed heights, and few-jump coarse profiles.  The last height is fixed
    up so the total rise is exactly 4k; candidates with nearly vanishing
    heights or clustered positions are resampled.
    """
    b = 2.0 * k + 1.0
    lo, hi = -b + collar + 1e-6, b - collar - 1e-6
    target = 4.0 * k
    for _ in range(200):
        kind = int(rng.integers(3))
        if kind == 0 and k >= 1:
            pos = np.arange(-(2 * k - 1), 2 * k, 2, dtype=float)
            pos = pos + rng.uniform(-0.4, 0.4, size=pos.shape)
            heights = 2.0 + rng.normal(0.0, 0.3, size=pos.shape)
        elif kind == 1:
            m = int(rng.integers(2, 13))
            pos = np.sort(rng.uniform(lo, hi, size=m))
            heights = rng.normal(0.0, 2.0, size=m)
        else:
            m = int(rng.integers(1, 4))
            pos = np.sort(rng.uniform(lo, hi, size=m))
            heights = rng.uniform(-1.0, 4.0, size=m)
        if len(pos) and (np.any(np.diff(pos) < 1e-6) or pos[0] < lo or pos[-1] > hi):
            continue
        heights[-1] = target - float(np.sum(heights[:-1]))
        if np.any(np.abs(heights) < 1e-3):
            continue
        return PureJump1D(
            base=-target / 2.0, jumps=tuple(zip(pos.tolist(), heights.tolist()))
        )
    raise RuntimeError("competitor resampling failed to produce a valid candidate")


def telescopic_stress(
    k: int,
    theta: float,
    n_trials: int = 10_000,
    seed: int = 0,
    collar: float = 0.1,
    slack: float = 1e-9,
    eq_tol: float = 1e-12,
) -> TrialReport:
    """Lower bound vs random competitors on (-(2k+1), 2k+1).

    Checks energy(v) >= rhs - slack for every competitor and that the
    canonical staircase attains the bound to eq_tol.
    """
    p = Params1D.normalized(theta)
    window = Interval(-(2.0 * k + 1.0), 2.0 * k + 1.0)
    stair = Staircase1D(1.0, 1.0, 0.0).restrict(window)
    lhs_s, rhs = telescopic_bound(window, stair, p, collar)
    eq_gap = abs(lhs_s - rhs)

    rng = np.random.default_rng((seed, k, int(round(theta * 1000))))
    min_excess = math.inf
    argmin = None
    argmin_jumps: tuple = ()
    for trial in range(n_trials):
        v = random_competitor_1d(rng, k, collar)
        lhs, rhs_t = telescopic_bound(window, v, p, collar)
        excess = lhs - rhs_t
        if excess < min_excess:
            min_excess, argmin, argmin_jumps = excess, trial, v.jumps
    passed = (n_trials == 0 or min_excess >= -slack) and eq_gap <= eq_tol
    return TrialReport(
        name=f"telescopic_k{k}_theta{theta:g}",
        trials=n_trials,
        min_excess=float(min_excess if n_trials else 0.0),
        argmin=argmin,
        passed=bool(passed),
        tolerance=slack,
        details={
            "k": k,
            "theta": theta,
            "rhs": rhs,
            "staircase_equality_gap": eq_gap,
            "equality_tolerance": eq_tol,
            "argmin_jumps": [list(j) for j in argmin_jumps],
        },
    )


# ---------------------------------------------------------------------------
# Exhaustive grid search via dynamic programming


@dataclass(frozen=True)
class BruteForceResult:
    """Optimal grid competitor found by the dynamic program."""

    minimizer: PureJump1D
    energy: float
    n_positions: int
    n_levels: int
    budget: int


def brute_force_1d(
    window: Interval,
    boundary: tuple[float, float],
    p: Params1D,
    *,
    position_step: float = 0.05,
    level_step: float = 0.1,
    level_lo: float | None = None,
    level_hi: float | None = None,
    budget: int = 4,
) -> BruteForceResult:
    """Exact minimum over piecewise constants with gridded jumps and levels.

    Candidate jump positions are the multiples of position_step strictly
    inside the window; values live on the level grid; at most `budget` jumps
    are allowed.  The first and last segments are pinned to the boundary
    values, which must lie on the level grid.  The optimum is found by
    dynamic programming over (position, level, jumps-used) states with the
    fidelity of each segment in closed form.
    """
    a, b = window.a, window.b
    lev_lo = min(boundary) if level_lo is None else float(level_lo)
    lev_hi = max(boundary) if level_hi is None else float(level_hi)
    n_lev = int(round((lev_hi - lev_lo) / level_step))
    levels = lev_lo + level_step * np.arange(n_lev + 1)
    if len(levels) < 2:
        raise ValueError("level grid needs at least two values")

    def level_index(value: float) -> int:
        idx = int(round((value - lev_lo) / level_step))
        if idx < 0 or idx > n_lev or abs(levels[idx] - value) > 1e-9:
            raise ValueError(f"boundary value {value} is not on the level grid")
        return idx

    i_left, i_right = level_index(boundary[0]), level_index(boundary[1])

    j0 = math.floor(a / position_step) + 1
    j1 = math.ceil(b / position_step) - 1
    positions = position_step * np.arange(j0, j1 + 1, dtype=float)
    positions = positions[(positions > a) & (positions < b)]
    if len(positions) == 0:
        raise ValueError("no candidate jump positions inside the window")

    L, B = len(levels), int(budget)
    jump_cost = p.alpha * np.abs(levels[:, None] - levels[None, :]) ** p.theta
    np.fill_diagonal(jump_cost, np.inf)

    def seg_fid(lo: float, hi: float) -> np.ndarray:
        m = p.m
        return p.beta * ((levels - m * lo) ** 3 - (levels - m * hi) ** 3) / (3.0 * m)

    cost = np.full((L, B + 1), np.inf)
    cost[i_left, 0] = 0.0
    choices = np.empty((len(positions), L, B + 1), dtype=np.int32)
    prev_x = a
    for pi, t in enumerate(positions):
        cost = cost + seg_fid(prev_x, float(t))[:, None]
        cand = cost[:, None, :] + jump_cost[:, :, None]
        best_src = np.argmin(cand, axis=0)
        best_val = np.take_along_axis(cand, best_src[None], axis=0)[0]
        choice = np.tile(np.arange(L, dtype=np.int32)[:, None], (1, B + 1))
        new_cost = cost.copy()
        take = best_val[:, :-1] < cost[:, 1:]
        new_cost[:, 1:] = np.where(take, best_val[:, :-1], cost[:, 1:])
        choice[:, 1:] = np.where(take, best_src[:, :-1].astype(np.int32), choice[:, 1:])
        cost, choices[pi] = new_cost, choice
        prev_x = float(t)
    cost = cost + seg_fid(prev_x, b)[:, None]

    finals = cost[i_right]
    j_best = int(np.argmin(finals))
    energy = float(finals[j_best])
    if not np.isfinite(energy):
        raise ValueError("no grid competitor satisfies the boundary pinning")

    jumps: list[tuple[float, float]] = []
    lvl, j = i_right, j_best
    for pi in range(len(positions) - 1, -1, -1):
        src = int(choices[pi, lvl, j])
        if src != lvl:
            jumps.append((float(positions[pi]), float(levels[lvl] - levels[src])))
            lvl, j = src, j - 1
    jumps.reverse()
    u = PureJump1D(base=float(levels[i_left]), jumps=tuple(jumps))

    direct = jf_1d(window, u, p).total
    if abs(direct - energy) > 1e-9 * max(1.0, abs(energy)):
        raise AssertionError(
            f"dynamic program energy {energy} disagrees with direct evaluation {direct}"
        )
    return BruteForceResult(u, energy, len(positions), L, B)


# ---------------------------------------------------------------------------
# First-order optimality spot checks


def jump_symmetry_test(
    n_trials: int = 100, seed: int = 0, tol: float = 1e-4
) -> CheckReport:
    """The optimal position of a single jump bisects its levels.

    For u jumping from value va to vb, minimizing the energy over the jump
    position t gives m t* = (va + vb) / 2 regardless of alpha, beta, theta.
    Verified numerically with a bounded scalar minimizer and random
    parameters.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    arg = None
    for trial in range(n_trials):
        theta = float(rng.uniform(0.0, 0.9))
        alpha = float(rng.uniform(0.5, 6.0))
        beta = float(rng.uniform(0.5, 6.0))
        m = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0))
        p = Params1D(theta, alpha, beta, m)
        va = float(rng.uniform(-2.0, 2.0))
        vb = float(rng.uniform(-2.0, 2.0))
        if abs(va - vb) < 0.1:
            vb = va + 0.5
        # only forcing-aligned jumps have an interior optimal position
        if (vb - va) * m < 0.0:
            va, vb = vb, va
        lo = min(va / m, vb / m) - 1.0
        hi = max(va / m, vb / m) + 1.0
        window = Interval(lo, hi)

        def energy(t: float) -> float:
            return jf_1d(window, PureJump1D(va, ((t, vb - va),)), p).total

        res = minimize_scalar(
            energy,
            bounds=(lo + 1e-9, hi - 1e-9),
            method="bounded",
            options={"xatol": 1e-10},
        )
        dev = abs(m * float(res.x) - 0.5 * (va + vb))
        if dev > worst:
            worst, arg = dev, (va, vb, m, theta)
    return CheckReport(
        name="jump_position_symmetry",
        passed=worst <= tol,
        max_violation=worst,
        argmax=arg,
        grid=f"{n_trials} random (levels, slope, theta) draws",
    )


def equidistance_test(
    n: int = 2, n_starts: int = 20, seed: int = 0, tol: float = 1e-3
) -> CheckReport:
    """Free minimization with n jumps on (-(n+1), n+1) yields equal gaps.

    With theta = 0 the jump cost ignores heights, so alternating the two
    closed-form updates (optimal level of a segment is m times its midpoint;
    optimal position between two levels is their mean over m) is exact
    coordinate descent.  All n+1 resulting gaps must equal 2 within tol,
    from every random start.
    """
    p = Params1D.normalized(0.0)
    a, b = -(n + 1.0), n + 1.0
    rng = np.random.default_rng(seed)
    worst = 0.0
    energies = []
    for _ in range(n_starts):
        t = np.sort(rng.uniform(a + 0.2, b - 0.2, size=n))
        while np.any(np.diff(t) < 1e-3):
            t = np.sort(rng.uniform(a + 0.2, b - 0.2, size=n))
        for _ in range(20_000):
            knots = np.concatenate([[a], t, [b]])
            v = 0.5 * (knots[:-1] + knots[1:])
            t_new = 0.5 * (v[:-1] + v[1:])
            if np.max(np.abs(t_new - t)) < 1e-13:
                t = t_new
                break
            t = t_new
        knots = np.concatenate([[a], t, [b]])
        gaps = np.diff(knots)
        worst = max(worst, float(np.max(np.abs(gaps - 2.0))))
        v = 0.5 * (knots[:-1] + knots[1:])
        u = PureJump1D(v[0], tuple((ti, v[i + 1] - v[i]) for i, ti in enumerate(t)))
        energies.append(jf_1d(Interval(a, b), u, p).total)
    spread = float(np.max(energies) - np.min(energies)) if energies else 0.0
    return CheckReport(
        name=f"equidistance_n{n}",
        passed=worst <= tol,
        max_violation=worst,
        grid=f"{n_starts} random starts, exact coordinate descent",
        details={"energy_spread_across_starts": spread, "energy": float(np.min(energies))},
    )


# ---------------------------------------------------------------------------
# Slicing: 2D energy vs stacked 1D slices


def extend_1d_to_2d(u: PureJump1D, window: Polygon) -> PiecewiseCell2D:
    """Vertical extension v(x, y) = u(x) as a cell complex on a rectangle."""
    x0, y0, x1, y1 = rect_bounds(window)
    pos = [float(t) for t in u.positions if x0 < t < x1]
    cuts = [x0] + pos + [x1]
    regions = []
    interfaces = []
    for lo, hi in zip(cuts, cuts[1:]):
        val = float(u(0.5 * (lo + hi)))
        regions.append((Polygon.rectangle(lo, y0, hi, y1), val))
    for t in pos:
        left = float(u(t - 1e-13 * max(1.0, abs(t))))
        right = float(u(t))
        interfaces.append(
            InterfacePolyline(np.array([[t, y0], [t, y1]]), left, right)
        )
    return PiecewiseCell2D(tuple(regions), tuple(interfaces))


def slicing_product_check(
    n_trials: int = 100, seed: int = 0, tol: float = 1e-12
) -> CheckReport:
    """2D energy of a vertical extension equals height times the 1D energy."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    arg = None
    for trial in range(n_trials):
        theta = float(rng.uniform(0.0, 0.9))
        alpha = float(rng.uniform(0.5, 4.0))
        beta = float(rng.uniform(0.5, 3.0))
        m = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 1.5))
        x0 = float(rng.uniform(-2.0, 0.0))
        x1 = x0 + float(rng.uniform(0.5, 2.5))
        y0 = float(rng.uniform(-2.0, 0.0))
        y1 = y0 + float(rng.uniform(0.5, 2.5))
        n_j = int(rng.integers(0, 7))
        pos = np.sort(rng.uniform(x0 + 0.01, x1 - 0.01, size=n_j))
        while np.any(np.diff(pos) < 1e-3):
            pos = np.sort(rng.uniform(x0 + 0.01, x1 - 0.01, size=n_j))
        heights = rng.uniform(0.2, 2.0, size=n_j) * rng.choice([-1.0, 1.0], size=n_j)
        u = PureJump1D(float(rng.uniform(-1.5, 1.5)), tuple(zip(pos, heights)))
        p1 = Params1D(theta, alpha, beta, m)
        p2 = Params2D(theta, alpha, beta, (m, 0.0))
        window = Polygon.rectangle(x0, y0, x1, y1)
        e2 = jf_2d(window, extend_1d_to_2d(u, window), p2).total
        e1 = jf_1d(Interval(x0, x1), u, p1).total
        dev = abs(e2 - (y1 - y0) * e1)
        if dev > worst:
            worst, arg = dev, trial
    return CheckReport(
        name="slicing_product_identity",
        passed=worst <= tol,
        max_violation=worst,
        argmax=arg,
        grid=f"{n_trials} random extensions",
    )


def federer_slice_check(
    n_trials: int = 100, seed: int = 0, n_y: int = 801, tol: float = 1e-3
) -> CheckReport:
    """Stacked slice energies never exceed the 2D energy; tilts cost extra.

    For a competitor with a single tilted interface of slope s (in x per
    unit y), the horizontal slices see the jump with weight 1 per unit
    height while the 2D jump term pays the full length, a factor
    sqrt(1 + s^2).  The slice integral (trapezoid in y, closed-form
    fidelity in x) must stay below the 2D energy within quadrature error,
    with at least the predicted tilt margin.
    """
    rng = np.random.default_rng(seed)
    worst_over = -math.inf
    worst_margin = math.inf
    arg = None
    for trial in range(n_trials):
        theta = float(rng.uniform(0.0, 0.9))
        alpha = float(rng.uniform(0.5, 4.0))
        beta = float(rng.uniform(0.5, 3.0))
        m = 1.0
        x0, x1 = -2.0, 2.0
        y0 = float(rng.uniform(-1.5, 0.0))
        y1 = y0 + float(rng.uniform(1.0, 2.0))
        s = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.5))
        span = s * (y1 - y0)
        lo_a = x0 + 0.3 + max(-span, 0.0)
        hi_a = x1 - 0.3 - max(span, 0.0)
        xa = float(rng.uniform(lo_a, hi_a))
        xb = xa + span
        v1 = float(rng.uniform(-1.5, 0.5))
        v2 = v1 + float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0))

        left = Polygon(np.array([[x0, y0], [xa, y0], [xb, y1], [x0, y1]]))
        right = Polygon(np.array([[xa, y0], [x1, y0], [x1, y1], [xb, y1]]))
        iface = InterfacePolyline(np.array([[xa, y0], [xb, y1]]), v1, v2)
        cells = PiecewiseCell2D(((left, v1), (right, v2)), (iface,))
        p2 = Params2D(theta, alpha, beta, (m, 0.0))
        window = Polygon.rectangle(x0, y0, x1, y1)
        e2 = jf_2d(window, cells, p2).total

        ys = np.linspace(y0, y1, n_y)
        xc = xa + (ys - y0) * s

        def cube(v: float, lo, hi):
            return ((v - m * lo) ** 3 - (v - m * hi) ** 3) / (3.0 * m)

        fid = beta * (cube(v1, x0, xc) + cube(v2, xc, x1))
        slice_energy = alpha * abs(v2 - v1) ** theta + fid
        stacked = float(np.trapezoid(slice_energy, ys))

        overshoot = stacked - e2
        margin = (e2 - stacked) - alpha * abs(v2 - v1) ** theta * (y1 - y0) * (
            math.sqrt(1.0 + s * s) - 1.0
        )
        if overshoot > worst_over:
            worst_over, arg = overshoot, trial
        worst_margin = min(worst_margin, margin)
    return CheckReport(
        name="federer_slices_below_2d",
        passed=worst_over <= tol and worst_margin >= -tol,
        max_violation=float(worst_over),
        argmax=arg,
        grid=f"{n_trials} tilted interfaces, {n_y}-point trapezoid",
        details={"min_tilt_margin_slack": float(worst_margin)},
    )


# ---------------------------------------------------------------------------
# Jump interaction: merging two close jumps of the same sign


def jump_merge_test(
    n_trials: int = 200, seed: int = 0, theta_hi: float = 0.75
) -> TrialReport:
    """Merging two nearby same-sign jumps lowers the energy (reported only).

    Strict subadditivity of t -> t^theta for theta < 1 makes one combined
    jump cheaper than two separate ones, while the fidelity paid for moving
    a jump across a gap of at most 0.02 stays smaller for moderate heights.
    The merged jump position is re-optimized before comparing.
    """
    rng = np.random.default_rng(seed)
    window = Interval(-2.0, 2.0)
    min_gain = math.inf
    argmin = None
    for trial in range(n_trials):
        theta = float(rng.uniform(0.0, theta_hi))
        p = Params1D.normalized(theta)
        base = float(rng.uniform(-0.5, 0.5))
        h1 = float(rng.uniform(0.5, 2.0))
        h2 = float(rng.uniform(0.5, 2.0))
        sign = float(rng.choice([-1.0, 1.0]))
        gap = float(rng.uniform(1e-4, 0.02))
        t = float(rng.uniform(-1.0, 0.9))
        two = PureJump1D(base, ((t, sign * h1), (t + gap, sign * h2)))
        e_two = jf_1d(window, two, p).total

        def merged_energy(s: float) -> float:
            return jf_1d(window, PureJump1D(base, ((s, sign * (h1 + h2)),)), p).total

        res = minimize_scalar(
            merged_energy,
            bounds=(-1.9, 1.9),
            method="bounded",
            options={"xatol": 1e-10},
        )
        gain = e_two - float(res.fun)
        if gain < min_gain:
            min_gain, argmin = gain, trial
    return TrialReport(
        name="jump_merge_lowers_energy",
        trials=n_trials,
        min_excess=float(min_gain),
        argmin=argmin,
        passed=bool(min_gain > 0.0),
        tolerance=0.0,
        exploratory=True,
    )


# ---------------------------------------------------------------------------
# 2D perturbation stress around the bi-staircase


@dataclass(frozen=True, eq=False)
class StressSetup:
    """Precomputed context shared by every 2D stress trial."""

    theta: float
    window: Polygon
    p: Params2D
    f2: CalibrationField2D
    curve: InterfaceCurve
    xs: np.ndarray
    fs: np.ndarray
    strips: tuple[tuple[int, int], ...]
    reference: PiecewiseCell2D
    jf_reference: float


def stress_setup(
    theta: float = 0.0,
    bounds: tuple[float, float, float, float] = (-0.5, -2.0, 1.5, 2.0),
    chord: float = 1.5e-4,
) -> StressSetup:
    """Build the shared window, sampled curve, reference cells and energy."""
    x0, y0, x1, y1 = bounds
    window = Polygon.rectangle(x0, y0, x1, y1)
    curve = f_theta_build(theta)
    xs = curve_samples(curve, x0, x1, chord)
    fs = np.asarray(curve(xs))
    cells = cells_from_samples(window, xs, fs)

    cut_idx = [0]
    for k in range(math.floor(x0) + 1, math.ceil(x1)):
        if x0 < k < x1:
            cut_idx.append(int(np.searchsorted(xs, k)))
    cut_idx.append(len(xs) - 1)
    strips = tuple(zip(cut_idx, cut_idx[1:]))

    p = Params2D.normalized(theta)
    jf_ref = jf_semi_analytic(BiStaircase(curve), window, p).total
    return StressSetup(theta, window, p, CalibrationField2D.for_theta(theta), curve, xs, fs, strips, cells, jf_ref)


def _bump_zones(setup: StressSetup, margin: float = 0.05, edge: float = 0.07):
    """Open x-intervals clear of integers and the window's vertical sides."""
    x0, _, x1, _ = rect_bounds(setup.window)
    lo, hi = x0 + edge, x1 - edge
    cuts = [lo] + [k for k in range(math.floor(x0) + 1, math.ceil(x1)) if lo < k < hi] + [hi]
    zones = []
    for za, zb in zip(cuts, cuts[1:]):
        za2, zb2 = za + (margin if za != lo else 0.0), zb - (margin if zb != hi else 0.0)
        if zb2 - za2 > 0.1:
            zones.append((za2, zb2))
    return zones


def _smooth_hat(t: np.ndarray) -> np.ndarray:
    """C1 bump supported on [0, 1] with unit peak."""
    s = np.clip(2.0 * t - 1.0, -1.0, 1.0)
    return (1.0 - s * s) ** 2


def _apply_bump(setup: StressSetup, fs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    zones = _bump_zones(setup)
    za, zb = zones[int(rng.integers(len(zones)))]
    width = float(rng.uniform(0.08, min(0.4, zb - za)))
    start = float(rng.uniform(za, zb - width))
    amp = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.02, 0.3))
    t = (setup.xs - start) / width
    out = fs + amp * np.where((t > 0.0) & (t < 1.0), _smooth_hat(t), 0.0)
    return out


def _island_cells(setup: StressSetup, rng: np.random.Generator) -> PiecewiseCell2D:
    """Carve a rectangular island of different value inside one region."""
    xs, fs = setup.xs, setup.fs
    _, y0, _, y1 = rect_bounds(setup.window)
    strip_i = int(rng.integers(len(setup.strips)))
    i0, i1 = setup.strips[strip_i]
    upper = bool(rng.integers(2))

    margin = 0.07
    za = max(xs[i0] + margin, xs[i0] + 0.02)
    zb = min(xs[i1] - margin, xs[i1] - 0.02)
    width = float(rng.uniform(0.08, min(0.5, zb - za)))
    u0 = float(rng.uniform(za, zb - width))
    ia = int(np.searchsorted(xs, u0))
    ib = int(np.searchsorted(xs, u0 + width))
    ia, ib = max(ia, i0 + 2), min(ib, i1 - 2)
    u0, u1 = float(xs[ia]), float(xs[ib])

    f_seg = fs[ia : ib + 1]
    if upper:
        lo_y = float(f_seg.max()) + margin
        hi_y = y1 - margin
    else:
        lo_y = y0 + margin
        hi_y = float(f_seg.min()) - margin
    gap = hi_y - lo_y
    jy0 = lo_y + float(rng.uniform(0.0, 0.4 * gap))
    jy1 = hi_y - float(rng.uniform(0.0, 0.4 * gap))

    base = cells_from_samples(setup.window, xs, fs)
    reg = list(base.regions)
    idx = 2 * strip_i + (0 if upper else 1)
    _, host_val = reg[idx]
    delta = float(rng.choice([-2.0, -1.0, 1.0, 2.0]))

    cl = np.column_stack([xs[i0 : ia + 1], fs[i0 : ia + 1]])
    cm = np.column_stack([xs[ia : ib + 1], fs[ia : ib + 1]])
    cr = np.column_stack([xs[ib : i1 + 1], fs[ib : i1 + 1]])
    if upper:
        pieces = [
            Polygon(np.vstack([cl, [[u0, y1], [xs[i0], y1]]])),
            Polygon(np.vstack([cr, [[xs[i1], y1], [u1, y1]]])),
            Polygon(np.vstack([cm, [[u1, jy0], [u0, jy0]]])),
            Polygon(np.array([[u0, jy1], [u1, jy1], [u1, y1], [u0, y1]])),
        ]
    else:
        pieces = [
            Polygon(np.vstack([[[xs[i0], y0], [u0, y0]], cl[::-1]])),
            Polygon(np.vstack([[[u1, y0], [xs[i1], y0]], cr[::-1]])),
            Polygon(np.array([[u0, y0], [u1, y0], [u1, jy0], [u0, jy0]])),
            Polygon(np.vstack([[[u0, jy1], [u1, jy1]], cm[::-1]])),
        ]
    island = Polygon(np.array([[u0, jy0], [u1, jy0], [u1, jy1], [u0, jy1]]))
    new_regions = (
        reg[:idx]
        + [(pc, host_val) for pc in pieces]
        + [(island, host_val + delta)]
        + reg[idx + 1 :]
    )
    ring = np.array([[u0, jy0], [u1, jy0], [u1, jy1], [u0, jy1], [u0, jy0]])
    new_interfaces = base.interfaces + (
        InterfacePolyline(ring, host_val + delta, host_val),
    )
    return PiecewiseCell2D(tuple(new_regions), new_interfaces)


def _wiggle_overrides(setup: StressSetup, rng: np.random.Generator) -> dict[int, np.ndarray]:
    """Zigzag replacement for one interior vertical jump segment."""
    xs, fs = setup.xs, setup.fs
    x0, y0, x1, y1 = rect_bounds(setup.window)
    ks = [k for k in range(math.floor(x0) + 1, math.ceil(x1)) if x0 < k < x1]
    k = int(ks[int(rng.integers(len(ks)))])
    fk = float(fs[int(np.searchsorted(xs, k))])
    if k % 2 == 0:
        lo_y, hi_y = y0, fk
        ends = ((k, lo_y), (k, hi_y))
        inner_lo, inner_hi = lo_y + 0.05, hi_y - 0.01
    else:
        lo_y, hi_y = fk, y1
        ends = ((k, lo_y), (k, hi_y))
        inner_lo, inner_hi = lo_y + 0.01, hi_y - 0.05
    n_mid = int(rng.integers(3, 9))
    ys = np.sort(rng.uniform(inner_lo, inner_hi, size=n_mid))
    while np.any(np.diff(ys) < 1e-3):
        ys = np.sort(rng.uniform(inner_lo, inner_hi, size=n_mid))
    dx = rng.uniform(-0.04, 0.04, size=n_mid)
    pts = np.vstack([[ends[0]], np.column_stack([k + dx, ys]), [ends[1]]])
    return {k: pts}


class _StressCompetitors(Sequence):
    """Lazily built competitor sequence, deterministic per index."""

    def __init__(self, setup: StressSetup, n_trials: int, seed: int):
        self.setup = setup
        self.n_trials = n_trials
        self.seed = seed

    def __len__(self) -> int:
        return self.n_trials

    def __getitem__(self, i: int) -> PiecewiseCell2D:
        if not -self.n_trials <= i < self.n_trials:
            raise IndexError(i)
        i %= self.n_trials
        rng = np.random.default_rng((self.seed, 7919, i))
        setup = self.setup
        kind = i % 4
        if kind == 0:
            fs = _apply_bump(setup, setup.fs, rng)
            return cells_from_samples(setup.window, setup.xs, fs)
        if kind == 1:
            return _island_cells(setup, rng)
        if kind == 2:
            return cells_from_samples(
                setup.window, setup.xs, setup.fs,
                vert_overrides=_wiggle_overrides(setup, rng),
            )
        fs = setup.fs
        for _ in range(int(rng.integers(2, 4))):
            fs = _apply_bump(setup, fs, rng)
        return cells_from_samples(setup.window, setup.xs, fs)


def stress_2d(
    n_trials: int = 1000,
    seed: int = 0,
    theta: float = 0.0,
    tol: float = 1e-7,
    quad_tol: float = 1e-10,
    bounds: tuple[float, float, float, float] = (-0.5, -2.0, 1.5, 2.0),
    chord: float = 1.5e-4,
    setup: StressSetup | None = None,
) -> TrialReport:
    """Energy >= flux chain for random perturbations of the bi-staircase.

    Competitors mix curve bumps, rectangular islands of wrong value, zigzag
    replacements of vertical jump segments, and multi-bump combinations.
    Delegates the per-competitor chain accounting to the calibration layer;
    the reference energy is the semi-analytic one.
    """
    if setup is None:
        setup = stress_setup(theta, bounds, chord)
    competitors = _StressCompetitors(setup, n_trials, seed)
    rep = verify_minimality_chain(
        setup.window,
        competitors,
        setup.f2,
        setup.p,
        setup.reference,
        jf_reference=setup.jf_reference,
        tol=tol,
        quad_tol=quad_tol,
    )
    rep.name = f"stress_2d_theta{setup.theta:g}"
    rep.details.update(
        {
            "theta": setup.theta,
            "window": list(rect_bounds(setup.window)),
            "chord_step": chord,
            "competitor_kinds": ["bump", "island", "vline_wiggle", "multi_bump"],
            "seed": seed,
        }
    )
    return rep
