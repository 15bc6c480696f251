"""Polygon primitives with exact polynomial moments.

Everything downstream of the 2D energy rests on integrating quadratics over
polygons exactly.  For a simple counterclockwise polygon with vertices
(x_k, y_k) and edge cross-terms a_k = x_k*y_{k+1} - x_{k+1}*y_k, the shoelace
family gives closed forms for integral of 1, x, y, x^2, xy, y^2.  Clipping by
vertical half-planes (needed to split the truncated quadratic integrand) is a
specialized Sutherland-Hodgman pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Polygon",
    "InterfacePolyline",
    "polygon_moments",
    "clip_halfplane_x",
    "clip_halfplane",
    "points_in_polygon",
    "polyline_length",
    "rect_bounds",
]


@dataclass(frozen=True, eq=False)
class Polygon:
    """Simple counterclockwise polygon; vertices (n, 2), not repeated at the end."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("polygon needs an (n>=3, 2) vertex array")
        # drop an explicitly closed last vertex
        if np.array_equal(v[0], v[-1]):
            v = v[:-1]
        object.__setattr__(self, "vertices", v)
        if self.signed_area() <= 0.0:
            raise ValueError("polygon must be counterclockwise with positive area")

    def signed_area(self) -> float:
        v = self.vertices
        x, y = v[:, 0], v[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        return 0.5 * float(np.sum(x * yn - xn * y))

    @property
    def area(self) -> float:
        return self.signed_area()

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        v = self.vertices
        return (
            float(v[:, 0].min()),
            float(v[:, 1].min()),
            float(v[:, 0].max()),
            float(v[:, 1].max()),
        )

    @classmethod
    def rectangle(cls, x0: float, y0: float, x1: float, y1: float) -> "Polygon":
        if not (x0 < x1 and y0 < y1):
            raise ValueError("rectangle needs x0 < x1 and y0 < y1")
        return cls(np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float))

    def is_simple(self) -> bool:
        """Exact-ish simplicity test; delegated to a robust geometry kernel."""
        import shapely

        return bool(shapely.Polygon(self.vertices).is_valid)


@dataclass(frozen=True, eq=False)
class InterfacePolyline:
    """Oriented polyline separating two constant values.

    Walking the points in order, ``left`` is the value on the left-hand side
    and ``right`` on the right-hand side.  Values must differ: equal-valued
    region boundaries are not interfaces.
    """

    points: np.ndarray
    left: float
    right: float

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("interface polyline needs an (n>=2, 2) point array")
        object.__setattr__(self, "points", pts)
        if self.left == self.right:
            raise ValueError("interface must separate two different values")

    @property
    def length(self) -> float:
        return polyline_length(self.points)

    def reversed(self) -> "InterfacePolyline":
        return InterfacePolyline(self.points[::-1].copy(), left=self.right, right=self.left)


def polygon_moments(vertices: np.ndarray) -> dict[str, float]:
    """Exact integrals of 1, x, y, x^2, xy, y^2 over a CCW polygon."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    a = x * yn - xn * y
    return {
        "area": 0.5 * float(np.sum(a)),
        "x": float(np.sum((x + xn) * a)) / 6.0,
        "y": float(np.sum((y + yn) * a)) / 6.0,
        "xx": float(np.sum((x * x + x * xn + xn * xn) * a)) / 12.0,
        "yy": float(np.sum((y * y + y * yn + yn * yn) * a)) / 12.0,
        "xy": float(np.sum((2.0 * x * y + x * yn + xn * y + 2.0 * xn * yn) * a)) / 24.0,
    }


def clip_halfplane_x(vertices: np.ndarray, x_cut: float, keep: str) -> np.ndarray | None:
    """Clip a CCW polygon against the half-plane x <= x_cut or x >= x_cut.

    Returns the clipped vertex array (possibly with collinear duplicates,
    harmless for moments) or None when the intersection has empty interior.
    """
    if keep == "le":
        inside = lambda px: px <= x_cut
    elif keep == "ge":
        inside = lambda px: px >= x_cut
    else:
        raise ValueError("keep must be 'le' or 'ge'")

    v = np.asarray(vertices, dtype=float)
    out: list[tuple[float, float]] = []
    n = len(v)
    for i in range(n):
        cx, cy = v[i]
        nx, ny = v[(i + 1) % n]
        cin, nin = inside(cx), inside(nx)
        if cin:
            out.append((cx, cy))
        if cin != nin:
            # edge crosses x = x_cut; intersection parameter along the edge
            t = (x_cut - cx) / (nx - cx)
            out.append((x_cut, cy + t * (ny - cy)))
    if len(out) < 3:
        return None
    arr = np.asarray(out, dtype=float)
    # degenerate slivers: zero area after clipping
    x, y = arr[:, 0], arr[:, 1]
    area2 = float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    if area2 <= 0.0:
        return None
    return arr


def clip_halfplane(
    vertices: np.ndarray, normal: tuple[float, float], c: float, keep: str
) -> np.ndarray | None:
    """Clip a CCW polygon against <normal, (x,y)> <= c (keep='le') or >= c ('ge')."""
    a, b = float(normal[0]), float(normal[1])
    if keep == "le":
        inside = lambda s: s <= c
    elif keep == "ge":
        inside = lambda s: s >= c
    else:
        raise ValueError("keep must be 'le' or 'ge'")
    v = np.asarray(vertices, dtype=float)
    sval = a * v[:, 0] + b * v[:, 1]
    out: list[tuple[float, float]] = []
    n = len(v)
    for i in range(n):
        j = (i + 1) % n
        cin, nin = inside(sval[i]), inside(sval[j])
        if cin:
            out.append((v[i, 0], v[i, 1]))
        if cin != nin:
            t = (c - sval[i]) / (sval[j] - sval[i])
            out.append(tuple(v[i] + t * (v[j] - v[i])))
    if len(out) < 3:
        return None
    arr = np.asarray(out, dtype=float)
    x, y = arr[:, 0], arr[:, 1]
    if float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)) <= 0.0:
        return None
    return arr


def points_in_polygon(points: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    """Vectorized even-odd crossing test.  Boundary points are unspecified."""
    pts = np.asarray(points, dtype=float)
    v = np.asarray(vertices, dtype=float)
    px = pts[:, 0][:, None]
    py = pts[:, 1][:, None]
    x0, y0 = v[:, 0][None, :], v[:, 1][None, :]
    x1, y1 = np.roll(v[:, 0], -1)[None, :], np.roll(v[:, 1], -1)[None, :]
    cond = (y0 > py) != (y1 > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_at = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
    crossing = cond & (px < x_at)
    return np.sum(crossing, axis=1) % 2 == 1


def polyline_length(points: np.ndarray) -> float:
    pts = np.asarray(points, dtype=float)
    return float(np.sum(np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1]))))


def rect_bounds(window: "Polygon") -> tuple[float, float, float, float]:
    """Bounds of an axis-aligned rectangular window; rejects anything else."""
    v = window.vertices
    if len(v) != 4:
        raise ValueError("window must be an axis-aligned rectangle")
    edges = np.diff(np.vstack([v, v[:1]]), axis=0)
    if not np.all((edges[:, 0] == 0.0) | (edges[:, 1] == 0.0)):
        raise ValueError("window must be an axis-aligned rectangle")
    return window.bounds
