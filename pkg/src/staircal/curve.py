"""The interface curve separating the two phases of the bi-staircase.

On [0, 1] the curve is the antiderivative of g/sqrt(alpha_theta^2 - g^2)
with g(x) = 2/(1-theta) + 3x - 3x^2; it is extended evenly around 0 and
2-periodically.  Since g stays strictly below alpha_theta, the integrand is
smooth and the curve is built once as a dense Hermite table with the exact
derivative formula at the nodes, then evaluated anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .params import alpha_theta
from .quadrature import adaptive_simpson, fixed_gl, gl_nodes

__all__ = ["g_theta", "InterfaceCurve", "f_theta_build", "f_dual_quadrature"]


def g_theta(x, theta: float):
    """Interface slope numerator 2/(1-theta) + 3x - 3x^2 on [0, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError("g_theta is defined for x in [0, 1]")
    if not 0.0 <= theta < 1.0:
        raise ValueError("theta must lie in [0, 1)")
    out = 2.0 / (1.0 - theta) + 3.0 * x - 3.0 * x * x
    return out if out.ndim else float(out)


def _wrap(x: np.ndarray) -> np.ndarray:
    """Reduce to the fundamental period [-1, 1)."""
    return np.mod(x + 1.0, 2.0) - 1.0


def _g_periodic(x, theta: float) -> np.ndarray:
    return g_theta(np.abs(_wrap(np.asarray(x, dtype=float))), theta)


@dataclass(frozen=True, eq=False)
class InterfaceCurve:
    """Dense table plus Hermite interpolant for the interface curve."""

    theta: float
    xs: np.ndarray
    fs: np.ndarray
    f1: float

    def __post_init__(self) -> None:
        spline = CubicHermiteSpline(self.xs, self.fs, self._slope_unit(self.xs))
        object.__setattr__(self, "_spline", spline)

    @property
    def samples(self) -> np.ndarray:
        """Table of (x, f(x)) rows on [0, 1]."""
        return np.column_stack([self.xs, self.fs])

    @property
    def alpha(self) -> float:
        return alpha_theta(self.theta)

    def _slope_unit(self, x) -> np.ndarray:
        """Exact derivative g/sqrt(alpha^2 - g^2) for x in [0, 1]."""
        g = g_theta(x, self.theta)
        return g / np.sqrt(self.alpha**2 - g * g)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = np.abs(_wrap(x))
        out = self._spline(r)
        return out if out.ndim else float(out)

    def derivative(self, x):
        """Exact slope of the periodic even extension.

        The curve has corners at the integers; this returns the one-sided
        value from inside the adjacent monotone branch (0 exactly at even
        integers by the sign convention).
        """
        x = np.asarray(x, dtype=float)
        r = _wrap(x)
        out = np.sign(r) * self._slope_unit(np.abs(r))
        return out if out.ndim else float(out)

    def one_sided_derivative(self, x: float, from_right: bool = True) -> float:
        """Exact one-sided slope, meaningful at the integer corners too."""
        r = float(_wrap(np.asarray(x, dtype=float)))
        if from_right:
            return float(self._slope_unit(r) if r >= 0.0 else -self._slope_unit(-r))
        if r == -1.0:
            return float(self._slope_unit(1.0))
        return float(self._slope_unit(r) if r > 0.0 else -self._slope_unit(-r))

    def speed(self, x):
        """Arclength element sqrt(1 + f'^2) = alpha/sqrt(alpha^2 - g^2)."""
        x = np.asarray(x, dtype=float)
        g = _g_periodic(x, self.theta)
        out = self.alpha / np.sqrt(self.alpha**2 - g * g)
        return out if out.ndim else float(out)

    def arclength(self, x0: float, x1: float, tol: float = 1e-12) -> float:
        """Arclength of the graph over [x0, x1], split at integer corners."""
        if x1 < x0:
            return -self.arclength(x1, x0, tol)
        cuts = [x0] + [float(k) for k in np.arange(np.ceil(x0), np.floor(x1) + 1)] + [x1]
        cuts = sorted(set(cuts))
        total = 0.0
        for a, b in zip(cuts, cuts[1:]):
            if b > a:
                total += fixed_gl(lambda t: self.speed(t), a, b, n=40)
        return total

    def max_second_derivative(self) -> float:
        """Numeric bound for |f''| on [0, 1], used to pick chord steps."""
        x = np.linspace(0.0, 1.0, 4001)
        g = g_theta(x, self.theta)
        gp = 3.0 - 6.0 * x
        return float(np.max(np.abs(gp) * self.alpha**2 / (self.alpha**2 - g * g) ** 1.5))

    def chord_step(self, chord_tol: float) -> float:
        """Sample step keeping the sagitta of each chord below chord_tol."""
        return float(np.sqrt(8.0 * chord_tol / self.max_second_derivative()))


def f_theta_build(theta: float, tol: float = 1e-10, n_panels: int = 2048) -> InterfaceCurve:
    """Construct the interface curve table to interpolation accuracy tol.

    Node values come from panel-wise Gauss quadrature of the exact slope;
    accuracy is then verified against independently integrated midpoints and
    the table refined until the error is below tol.
    """
    if not 0.0 <= theta < 1.0:
        raise ValueError("theta must lie in [0, 1)")
    al = alpha_theta(theta)

    def slope(x):
        g = g_theta(x, theta)
        return g / np.sqrt(al * al - g * g)

    n = n_panels
    for _ in range(8):
        xs = np.linspace(0.0, 1.0, n + 1)
        gx, gw = gl_nodes(10)
        h = 0.5 / n
        nodes = xs[:-1, None] + h * (gx[None, :] + 1.0)
        panel = h * slope(nodes.ravel()).reshape(n, 10) @ gw
        fs = np.concatenate([[0.0], np.cumsum(panel)])
        curve = InterfaceCurve(theta=theta, xs=xs, fs=fs, f1=float(fs[-1]))

        mids = xs[:-1] + 0.5 / n
        # spot-verify on a subsample of midpoints with an independent rule
        idx = np.arange(0, n, max(1, n // 64))
        check = np.array([fs[i] + fixed_gl(slope, xs[i], mids[i], n=16) for i in idx])
        err = float(np.max(np.abs(curve(mids[idx]) - check)))
        if err < tol:
            return curve
        n *= 2
    raise RuntimeError("interface-curve table failed to reach requested tolerance")


def f_dual_quadrature(theta: float, x: float = 1.0) -> tuple[float, float]:
    """f_theta(x) by two independent rules: adaptive Simpson and composite GL."""
    al = alpha_theta(theta)

    def slope(t):
        g = g_theta(t, theta)
        return g / np.sqrt(al * al - g * g)

    simp = adaptive_simpson(slope, 0.0, x, tol=1e-12)
    panels = np.linspace(0.0, x, 17)
    gauss = sum(fixed_gl(slope, a, b, n=20) for a, b in zip(panels, panels[1:]))
    return simp, gauss
