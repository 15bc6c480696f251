"""Exact evaluation of the 2D jump functional on piecewise-constant cells.

A PiecewiseCell2D is a finite list of polygonal regions with values plus the
oriented interfaces separating them.  The jump term is alpha * sum over
interfaces of length * |value gap|^theta; the fidelity term integrates
(value - <xi, x>)^2 exactly over every region via polygon moments.  No
quadrature is involved anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .energy1d import EnergyBreakdown
from .geometry import (
    InterfacePolyline,
    Polygon,
    clip_halfplane_x,
    points_in_polygon,
    polygon_moments,
)
from .params import Params2D

__all__ = [
    "PiecewiseCell2D",
    "CellComplexError",
    "jf_2d",
    "integral_quadratic_deviation",
    "integral_min_quadratic",
    "validate_cells",
]


class CellComplexError(ValueError):
    """Regions fail to tile the window or interface labels are inconsistent."""


@dataclass(frozen=True, eq=False)
class PiecewiseCell2D:
    """Piecewise-constant function given by valued regions and tagged interfaces."""

    regions: tuple[tuple[Polygon, float], ...]
    interfaces: tuple[InterfacePolyline, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        regions = tuple((poly, float(val)) for poly, val in self.regions)
        object.__setattr__(self, "regions", regions)
        object.__setattr__(self, "interfaces", tuple(self.interfaces))
        if not regions:
            raise ValueError("cell complex needs at least one region")
        values = {val for _, val in regions}
        for seg in self.interfaces:
            if seg.left not in values or seg.right not in values:
                raise CellComplexError(
                    f"interface values ({seg.left}, {seg.right}) missing from regions"
                )

    @property
    def total_area(self) -> float:
        return float(sum(poly.area for poly, _ in self.regions))

    def value_at(self, x: float, y: float) -> float:
        """Value of the region containing (x, y); boundary points unspecified."""
        pt = np.array([[x, y]])
        for poly, val in self.regions:
            if bool(points_in_polygon(pt, poly.vertices)[0]):
                return val
        raise CellComplexError(f"point ({x}, {y}) lies in no region")


def integral_quadratic_deviation(vertices: np.ndarray, value: float, xi) -> float:
    """Exact integral of (value - xi1*x - xi2*y)^2 over the polygon."""
    m = polygon_moments(vertices)
    v = float(value)
    x1, x2 = float(xi[0]), float(xi[1])
    return (
        v * v * m["area"]
        - 2.0 * v * (x1 * m["x"] + x2 * m["y"])
        + x1 * x1 * m["xx"]
        + 2.0 * x1 * x2 * m["xy"]
        + x2 * x2 * m["yy"]
    )


def integral_min_quadratic(vertices: np.ndarray, z: float, sigma: float) -> float:
    """Exact integral of min{3(z-x)^2, 3 sigma^2} over the polygon.

    The integrand caps where |z - x| >= sigma, so the polygon is clipped at
    the vertical lines x = z -+ sigma and each part is integrated in closed
    form.
    """
    cap = 3.0 * sigma * sigma
    total = 0.0
    left = clip_halfplane_x(vertices, z - sigma, "le")
    if left is not None:
        total += cap * polygon_moments(left)["area"]
    right = clip_halfplane_x(vertices, z + sigma, "ge")
    if right is not None:
        total += cap * polygon_moments(right)["area"]
    mid = clip_halfplane_x(vertices, z - sigma, "ge")
    if mid is not None:
        mid = clip_halfplane_x(mid, z + sigma, "le")
    if mid is not None:
        m = polygon_moments(mid)
        total += 3.0 * (z * z * m["area"] - 2.0 * z * m["x"] + m["xx"])
    return total


def jf_2d(
    window: Polygon,
    v: PiecewiseCell2D,
    p: Params2D,
    *,
    tiling_rtol: float = 1e-9,
) -> EnergyBreakdown:
    """Jump functional with fidelity term of the cell complex over window.

    Regions must tile the window up to relative area tolerance; interfaces
    must separate differing values (enforced at construction).
    """
    win_area = window.area
    if abs(v.total_area - win_area) > tiling_rtol * max(1.0, win_area):
        raise CellComplexError(
            f"regions cover area {v.total_area}, window has {win_area}"
        )
    jump = 0.0
    for seg in v.interfaces:
        jump += seg.length * abs(seg.right - seg.left) ** p.theta
    jump *= p.alpha

    fid = 0.0
    for poly, val in v.regions:
        fid += integral_quadratic_deviation(poly.vertices, val, p.xi)
    fid *= p.beta
    if fid < 0.0:
        if fid < -1e-9:
            raise AssertionError(f"fidelity integral came out negative: {fid}")
        fid = 0.0
    return EnergyBreakdown(jump_term=jump, fidelity_term=fid)


def validate_cells(window: Polygon, v: PiecewiseCell2D, *, offset: float = 1e-6) -> None:
    """Geometric consistency check: each interface actually borders regions
    carrying its left/right values.

    Probes the midpoint of a middle segment of every interface, offset to
    both sides along the normal.  Intended for tests and debugging; energy
    evaluation does not need it.
    """
    for seg in v.interfaces:
        pts = seg.points
        k = (len(pts) - 1) // 2
        a, b = pts[k], pts[k + 1]
        mid = 0.5 * (a + b)
        d = b - a
        norm = float(np.hypot(*d))
        if norm == 0.0:
            raise CellComplexError("interface contains a zero-length segment")
        # left of the walking direction
        n = np.array([-d[1], d[0]]) / norm
        lv = v.value_at(*(mid + offset * n))
        rv = v.value_at(*(mid - offset * n))
        if lv != seg.left or rv != seg.right:
            raise CellComplexError(
                f"interface tagged ({seg.left}, {seg.right}) borders ({lv}, {rv})"
            )
