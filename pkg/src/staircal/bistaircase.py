"""The two-phase staircase candidate minimizer in the plane.

Above the interface curve the function equals the unit staircase s_base(x);
below it equals s_base(x - 1) + 1.  The jump set is the curve itself (gap 1)
together with vertical half-lines below it at even integers and above it at
odd integers (gap 2).  Translations in x carry a matching value offset so the
deviation from the forcing plane is preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import InterfaceCurve
from .energy1d import EnergyBreakdown
from .energy2d import PiecewiseCell2D
from .geometry import InterfacePolyline, Polygon, rect_bounds
from .params import Params2D
from .quadrature import adaptive_gl
from .staircase import s_base

__all__ = [
    "OnJumpSetError",
    "BiStaircase",
    "bistaircase_jumpset",
    "jf_semi_analytic",
    "curve_samples",
    "cells_from_samples",
]


class OnJumpSetError(ValueError):
    """Point evaluation was requested on (or too close to) the jump set."""


@dataclass(frozen=True, eq=False)
class BiStaircase:
    """Piecewise-constant two-phase staircase built on an interface curve."""

    curve: InterfaceCurve
    tau0: float = 0.0
    y_shift: float = 0.0

    @property
    def theta(self) -> float:
        return self.curve.theta

    def value(self, x, y, tol: float = 1e-12):
        """Pointwise value; raises OnJumpSetError within tol of the jump set."""
        xe = np.asarray(x, dtype=float) - self.tau0
        ye = np.asarray(y, dtype=float) - self.y_shift
        xe, ye = np.broadcast_arrays(xe, ye)
        fx = np.asarray(self.curve(xe))
        f1 = self.curve.f1

        on_curve = np.abs(ye - fx) <= tol
        near_even = (np.abs(xe - 2.0 * np.round(xe / 2.0)) <= tol) & (ye <= tol)
        odd = 2.0 * np.round((xe - 1.0) / 2.0) + 1.0
        near_odd = (np.abs(xe - odd) <= tol) & (ye >= f1 - tol)
        bad = on_curve | near_even | near_odd
        if np.any(bad):
            i = tuple(np.argwhere(bad)[0])
            raise OnJumpSetError(
                f"point ({xe[i] + self.tau0}, {ye[i] + self.y_shift}) "
                "lies on the jump set"
            )
        out = np.where(ye > fx, s_base(xe), s_base(xe - 1.0) + 1.0) + self.tau0
        return out if out.ndim else float(out)

    def __call__(self, x, y, tol: float = 1e-12):
        return self.value(x, y, tol=tol)


def _strip_values(m: int) -> tuple[int, int]:
    """(above, below) values of the unshifted bi-staircase on (m, m+1)."""
    if m % 2 == 0:
        return m, m + 1
    return m + 1, m


def bistaircase_jumpset(
    b: BiStaircase, window: Polygon, chord_tol: float = 1e-9
) -> tuple[InterfacePolyline, ...]:
    """Jump set of b inside an open rectangular window, as tagged polylines.

    Curve branches are chorded finely enough that the polyline length is
    within chord_tol of the true arclength per unit of curve.  Pieces lying
    on the window boundary are excluded (open-window convention).
    """
    x0, y0, x1, y1 = rect_bounds(window)
    a, bb = x0 - b.tau0, x1 - b.tau0
    f1 = b.curve.f1
    if not (y0 - b.y_shift < 0.0 and f1 < y1 - b.y_shift):
        raise ValueError("window must strictly contain the vertical spread of the curve")
    step = b.curve.chord_step(chord_tol)

    pieces: list[InterfacePolyline] = []
    for m in range(math.floor(a), math.floor(bb) + 1):
        lo, hi = max(a, float(m)), min(bb, float(m + 1))
        if hi - lo <= 1e-15:
            continue
        n = max(2, math.ceil((hi - lo) / step) + 1)
        xs = np.linspace(lo, hi, n)
        pts = np.column_stack([xs + b.tau0, np.asarray(b.curve(xs)) + b.y_shift])
        above, below = _strip_values(m)
        pieces.append(InterfacePolyline(pts, above + b.tau0, below + b.tau0))

    for k in range(math.floor(a) + 1, math.ceil(bb)):
        if not (a < k < bb):
            continue
        xk = k + b.tau0
        if k % 2 == 0:
            seg = np.array([[xk, y0], [xk, b.y_shift]])
        else:
            seg = np.array([[xk, b.y_shift + f1], [xk, y1]])
        pieces.append(InterfacePolyline(seg, k - 1 + b.tau0, k + 1 + b.tau0))
    return tuple(pieces)


def jf_semi_analytic(
    b: BiStaircase, window: Polygon, p: Params2D, tol: float = 1e-12
) -> EnergyBreakdown:
    """Energy of b over a rectangle, independent of the polygon machinery.

    The jump term uses exact vertical lengths plus quadrature arclength; the
    fidelity term reduces to 1D integrals of (value - x)^2 times strip
    heights.  Requires forcing aligned with the x axis.
    """
    if tuple(p.xi) != (1.0, 0.0):
        raise ValueError("semi-analytic evaluation assumes forcing (1, 0)")
    x0, y0, x1, y1 = rect_bounds(window)
    a, bb = x0 - b.tau0, x1 - b.tau0
    f1 = b.curve.f1
    y0c, y1c = y0 - b.y_shift, y1 - b.y_shift
    if not (y0c < 0.0 and f1 < y1c):
        raise ValueError("window must strictly contain the vertical spread of the curve")

    vert = 0.0
    for k in range(math.floor(a) + 1, math.ceil(bb)):
        if not (a < k < bb):
            continue
        vert += -y0c if k % 2 == 0 else y1c - f1
    arclen = b.curve.arclength(a, bb)
    jump = p.alpha * (vert * 2.0**p.theta + arclen)

    fid = 0.0
    for m in range(math.floor(a), math.floor(bb) + 1):
        lo, hi = max(a, float(m)), min(bb, float(m + 1))
        if hi - lo <= 1e-15:
            continue
        va, vb = _strip_values(m)

        def integrand(t, va=va, vb=vb):
            f = np.asarray(b.curve(t))
            return (va - t) ** 2 * (y1c - f) + (vb - t) ** 2 * (f - y0c)

        fid += adaptive_gl(integrand, lo, hi, tol=tol)
    return EnergyBreakdown(jump_term=jump, fidelity_term=p.beta * fid)


def curve_samples(
    curve: InterfaceCurve,
    x0: float,
    x1: float,
    max_step: float,
    fine_zones: tuple[tuple[float, float, float], ...] = (),
) -> np.ndarray:
    """Sample grid for chording the curve on [x0, x1].

    Integer corners and both endpoints appear exactly; each unit branch is
    subdivided with step <= max_step; fine_zones entries (lo, hi, step) add
    locally refined samples, e.g. around perturbation supports.
    """
    if x1 <= x0:
        raise ValueError("need x0 < x1")
    cuts = np.concatenate(
        [[x0, x1], np.arange(math.ceil(x0), math.floor(x1) + 1, dtype=float)]
    )
    cuts = np.unique(cuts)
    parts = []
    for lo, hi in zip(cuts, cuts[1:]):
        n = max(1, math.ceil((hi - lo) / max_step))
        parts.append(np.linspace(lo, hi, n + 1))
    for lo, hi, step in fine_zones:
        lo, hi = max(lo, x0), min(hi, x1)
        if hi <= lo:
            continue
        n = max(1, math.ceil((hi - lo) / step))
        parts.append(np.linspace(lo, hi, n + 1))
    xs = np.unique(np.concatenate(parts))
    keep = np.concatenate([[True], np.diff(xs) > 1e-13])
    return xs[keep]


def _dedup_ring(points: list[np.ndarray]) -> np.ndarray:
    pts = np.asarray(np.vstack(points), dtype=float)
    keep = np.concatenate([[True], np.any(np.diff(pts, axis=0) != 0.0, axis=1)])
    pts = pts[keep]
    if len(pts) > 1 and np.all(pts[0] == pts[-1]):
        pts = pts[:-1]
    return pts


def cells_from_samples(
    window: Polygon,
    xs: np.ndarray,
    fs: np.ndarray,
    *,
    tau0: float = 0.0,
    y_shift: float = 0.0,
    vert_overrides: dict[int, np.ndarray] | None = None,
) -> PiecewiseCell2D:
    """Polygonal cell complex for a (possibly perturbed) bi-staircase.

    xs, fs describe the interface curve by samples in translation-free
    coordinates; xs must contain every integer of the window's x-range
    exactly.  vert_overrides maps an interior integer to a replacement
    polyline (bottom to top, endpoints matching the straight segment) for
    the vertical jump piece there.
    """
    x0, y0, x1, y1 = rect_bounds(window)
    a, bb = x0 - tau0, x1 - tau0
    y0c, y1c = y0 - y_shift, y1 - y_shift
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=float)
    if xs.shape != fs.shape or xs.ndim != 1 or len(xs) < 2:
        raise ValueError("xs and fs must be matching 1D sample arrays")
    if abs(xs[0] - a) > 1e-12 or abs(xs[-1] - bb) > 1e-12:
        raise ValueError("samples must span the window's x-range")
    if np.any(fs <= y0c) or np.any(fs >= y1c):
        raise ValueError("curve samples must stay strictly inside the window")
    overrides = dict(vert_overrides or {})

    cuts = [0]
    for k in range(math.floor(a) + 1, math.ceil(bb)):
        if not (a < k < bb):
            continue
        idx = int(np.searchsorted(xs, k))
        if idx >= len(xs) or abs(xs[idx] - k) > 1e-12:
            raise ValueError(f"sample grid must contain the integer {k} exactly")
        cuts.append(idx)
    cuts.append(len(xs) - 1)

    def shift_pts(pts: np.ndarray) -> np.ndarray:
        return pts + np.array([tau0, y_shift])

    regions: list[tuple[Polygon, float]] = []
    interfaces: list[InterfacePolyline] = []

    for i0, i1 in zip(cuts, cuts[1:]):
        seg_x, seg_f = xs[i0 : i1 + 1], fs[i0 : i1 + 1]
        m = math.floor(0.5 * (seg_x[0] + seg_x[-1]))
        above, below = _strip_values(m)
        curve_pts = np.column_stack([seg_x, seg_f])

        lo_k = int(round(seg_x[0]))
        hi_k = int(round(seg_x[-1]))
        lo_w = overrides.get(lo_k) if abs(seg_x[0] - lo_k) < 1e-12 else None
        hi_w = overrides.get(hi_k) if abs(seg_x[-1] - hi_k) < 1e-12 else None

        # upper region: curve left->right, right edge up, top right->left
        up_parts = [curve_pts]
        if hi_w is not None and hi_k % 2 == 1:
            up_parts.append(hi_w)
        up_parts.append(np.array([[seg_x[-1], y1c], [seg_x[0], y1c]]))
        if lo_w is not None and lo_k % 2 == 1:
            up_parts.append(lo_w[::-1])
        regions.append(
            (Polygon(shift_pts(_dedup_ring(up_parts))), above + tau0)
        )

        # lower region: bottom left->right, right edge up, curve right->left
        low_parts = [np.array([[seg_x[0], y0c], [seg_x[-1], y0c]])]
        if hi_w is not None and hi_k % 2 == 0:
            low_parts.append(hi_w)
        low_parts.append(curve_pts[::-1])
        if lo_w is not None and lo_k % 2 == 0:
            low_parts.append(lo_w[::-1])
        regions.append(
            (Polygon(shift_pts(_dedup_ring(low_parts))), below + tau0)
        )

        interfaces.append(
            InterfacePolyline(shift_pts(curve_pts), above + tau0, below + tau0)
        )

    for k_idx in cuts[1:-1]:
        k = int(round(xs[k_idx]))
        fk = fs[k_idx]
        if k in overrides:
            seg = overrides[k]
            expect_lo = [k, y0c] if k % 2 == 0 else [k, fk]
            expect_hi = [k, fk] if k % 2 == 0 else [k, y1c]
            if not (
                np.allclose(seg[0], expect_lo, atol=1e-12)
                and np.allclose(seg[-1], expect_hi, atol=1e-12)
            ):
                raise ValueError(f"override at {k} must match the segment endpoints")
        elif k % 2 == 0:
            seg = np.array([[k, y0c], [k, fk]])
        else:
            seg = np.array([[k, fk], [k, y1c]])
        interfaces.append(
            InterfacePolyline(shift_pts(np.asarray(seg, dtype=float)), k - 1 + tau0, k + 1 + tau0)
        )

    return PiecewiseCell2D(tuple(regions), tuple(interfaces))
