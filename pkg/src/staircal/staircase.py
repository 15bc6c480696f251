"""Canonical staircases in 1D and their directional 2D extensions.

The base step function is S(x) = 2*floor((x+1)/2): integer plateaus of width
2 centered on even integers, jumping by 2 at odd integers.  An (H, V)
staircase rescales this to steps of length 2H and height 2V; the oblique
translation by tau0 slides the whole picture along the forcing line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy1d import Interval, PureJump1D
from .energy2d import PiecewiseCell2D
from .geometry import InterfacePolyline, Polygon, clip_halfplane

__all__ = ["s_base", "Staircase1D", "StaircaseDir2D"]


def s_base(x):
    """Base staircase S(x) = 2*floor((x+1)/2)."""
    x = np.asarray(x, dtype=float)
    out = 2.0 * np.floor(0.5 * (x + 1.0))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Staircase1D:
    """(H, V) staircase with oblique translation tau0 in [-1, 1]."""

    h: float = 1.0
    v: float = 1.0
    tau0: float = 0.0

    def __post_init__(self) -> None:
        if not self.h > 0.0:
            raise ValueError("step length h must be positive")
        if not -1.0 <= self.tau0 <= 1.0:
            raise ValueError("tau0 must lie in [-1, 1]")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        s = np.asarray(s_base((x - self.h * self.tau0) / self.h))
        out = self.v * s + self.v * self.tau0
        return out if out.ndim else float(out)

    def jump_positions(self, window: Interval) -> np.ndarray:
        """Jump points H*(2k+1+tau0) strictly inside the window."""
        lo = (window.a / self.h - 1.0 - self.tau0) / 2.0
        hi = (window.b / self.h - 1.0 - self.tau0) / 2.0
        ks = np.arange(math.floor(lo) - 1, math.ceil(hi) + 2)
        pos = self.h * (2.0 * ks + 1.0 + self.tau0)
        return pos[(pos > window.a) & (pos < window.b)]

    def restrict(self, window: Interval) -> PureJump1D:
        """Finite pure-jump representation of the staircase on the window."""
        pos = self.jump_positions(window)
        first_piece_end = pos[0] if len(pos) else window.b
        base = float(self(0.5 * (window.a + first_piece_end)))
        return PureJump1D(base=base, jumps=tuple((float(t), 2.0 * self.v) for t in pos))


@dataclass(frozen=True)
class StaircaseDir2D:
    """Directional staircase: stripes orthogonal to a unit direction xi_unit."""

    h: float
    v: float
    tau0: float
    xi_unit: tuple[float, float]

    def __post_init__(self) -> None:
        n = math.hypot(*self.xi_unit)
        if n == 0.0:
            raise ValueError("direction must be nonzero")
        object.__setattr__(
            self, "xi_unit", (float(self.xi_unit[0]) / n, float(self.xi_unit[1]) / n)
        )
        if not self.h > 0.0:
            raise ValueError("step length h must be positive")
        if not -1.0 <= self.tau0 <= 1.0:
            raise ValueError("tau0 must lie in [-1, 1]")

    @property
    def profile(self) -> Staircase1D:
        return Staircase1D(self.h, self.v, self.tau0)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        s = x * self.xi_unit[0] + y * self.xi_unit[1]
        return self.profile(s)

    def to_cells(self, window: Polygon) -> PiecewiseCell2D:
        """Stripe decomposition of a convex window into valued cells.

        Interfaces are oriented along the 90-degree counterclockwise rotation
        of xi_unit, so the lower-value stripe sits on their left.
        """
        ux, uy = self.xi_unit
        verts = window.vertices
        s = verts[:, 0] * ux + verts[:, 1] * uy
        smin, smax = float(s.min()), float(s.max())
        prof = self.profile

        lo = (smin / self.h - 1.0 - self.tau0) / 2.0
        hi = (smax / self.h - 1.0 - self.tau0) / 2.0
        ks = np.arange(math.floor(lo) - 1, math.ceil(hi) + 2)
        cuts_all = self.h * (2.0 * ks + 1.0 + self.tau0)
        cuts = [float(c) for c in cuts_all if smin < c < smax]

        regions: list[tuple[Polygon, float]] = []
        boundaries = [smin] + cuts + [smax]
        for c0, c1 in zip(boundaries, boundaries[1:]):
            poly = verts
            if c0 > smin:
                poly = clip_halfplane(poly, (ux, uy), c0, "ge")
            if poly is not None and c1 < smax:
                poly = clip_halfplane(poly, (ux, uy), c1, "le")
            if poly is None:
                continue
            value = float(prof(0.5 * (c0 + c1)))
            regions.append((Polygon(poly), value))

        interfaces: list[InterfacePolyline] = []
        d = np.array([-uy, ux])
        for c in cuts:
            pts = _line_polygon_chord(verts, (ux, uy), c)
            if pts is None:
                continue
            # sort the chord along the interface direction
            if np.dot(pts[1] - pts[0], d) < 0.0:
                pts = pts[::-1]
            below = float(prof(c - 0.5 * self.h))
            above = float(prof(c + 0.5 * self.h))
            interfaces.append(InterfacePolyline(pts, left=below, right=above))
        return PiecewiseCell2D(tuple(regions), tuple(interfaces))


def _line_polygon_chord(
    vertices: np.ndarray, normal: tuple[float, float], c: float
) -> np.ndarray | None:
    """Chord cut by the line <normal, p> = c through a convex polygon."""
    a, b = normal
    v = np.asarray(vertices, dtype=float)
    s = a * v[:, 0] + b * v[:, 1] - c
    pts: list[np.ndarray] = []
    n = len(v)
    for i in range(n):
        j = (i + 1) % n
        si, sj = s[i], s[j]
        if si == 0.0:
            pts.append(v[i])
        if (si < 0.0 < sj) or (sj < 0.0 < si):
            t = si / (si - sj)
            pts.append(v[i] + t * (v[j] - v[i]))
    if not pts:
        return None
    arr = np.unique(np.round(np.asarray(pts), 14), axis=0)
    if len(arr) < 2:
        return None
    if len(arr) > 2:
        # convexity gives two extreme points; keep them
        d = np.array([-b, a])
        proj = arr @ d
        arr = arr[[int(np.argmin(proj)), int(np.argmax(proj))]]
    return arr
