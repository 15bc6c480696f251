"""The 1D calibration field and machine checks of its defining properties.

The field F(x, z) = [(3-theta)x + truncated_cubic(z-x)] / (1-theta) is an
explicit potential whose x-derivative equals the capped fidelity integrand
3*min{(z-x)^2, sigma^2}.  Two exact difference identities across the
staircase's jumps and two inequalities (a horizontal growth bound and a
Hoelder-type vertical bound) make it a calibration; each has its own grid
check here, and telescoping the identities across a window gives the lower
bound that certifies the staircase's energy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .energy1d import Interval, PureJump1D, jf_1d
from .params import Params1D, alpha_theta, sigma_theta
from .reports import CheckReport

__all__ = [
    "TruncatedCubic",
    "CalibrationField1D",
    "phi_hat",
    "f_field",
    "verify_equalities",
    "verify_inequality_horizontal",
    "verify_inequality_vertical",
    "telescopic_bound",
]


@dataclass(frozen=True)
class TruncatedCubic:
    """Odd C^1 function: cubic (3-theta)s - (1-theta)s^3 frozen past its peaks."""

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta < 1.0:
            raise ValueError("theta must lie in [0, 1)")

    @property
    def sigma(self) -> float:
        return sigma_theta(self.theta)

    @property
    def cap(self) -> float:
        """Constant value taken for s >= sigma."""
        s = self.sigma
        return (3.0 - self.theta) * s - (1.0 - self.theta) * s**3

    def value(self, s):
        s = np.clip(np.asarray(s, dtype=float), -self.sigma, self.sigma)
        out = (3.0 - self.theta) * s - (1.0 - self.theta) * s**3
        return out if out.ndim else float(out)

    def derivative(self, s):
        s = np.asarray(s, dtype=float)
        inside = (3.0 - self.theta) - 3.0 * (1.0 - self.theta) * s * s
        out = np.where(np.abs(s) < self.sigma, inside, 0.0)
        return out if out.ndim else float(out)


def phi_hat(c: TruncatedCubic, s):
    """Truncated cubic value (module-level alias for the method)."""
    return c.value(s)


@dataclass(frozen=True)
class CalibrationField1D:
    """Potential F(x, z) whose x-derivative is the capped quadratic."""

    theta: float
    cubic: TruncatedCubic

    def __post_init__(self) -> None:
        if self.cubic.theta != self.theta:
            raise ValueError("cubic and field must share theta")

    @classmethod
    def for_theta(cls, theta: float) -> "CalibrationField1D":
        return cls(theta, TruncatedCubic(theta))

    def field(self, x, z):
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        out = ((3.0 - self.theta) * x + self.cubic.value(z - x)) / (1.0 - self.theta)
        return out if out.ndim else float(out)

    def dfdx(self, x, z):
        """Closed-form x-derivative 3*min{(z-x)^2, sigma^2}."""
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        s = self.cubic.sigma
        out = 3.0 * np.minimum((z - x) ** 2, s * s)
        return out if out.ndim else float(out)


def f_field(f: CalibrationField1D, x, z):
    """Field value (module-level alias for the method)."""
    return f.field(x, z)


def verify_equalities(
    f: CalibrationField1D,
    j_lo: float = -10.0,
    j_hi: float = 10.0,
    n_real: int = 801,
    tol: float = 1e-12,
) -> CheckReport:
    """Exact difference identities across one step and one riser.

    For every real j: F(2j+1, 2j) - F(2j-1, 2j) = 2 and
    F(2j-1, 2j) - F(2j-1, 2j-2) = 4/(1-theta).
    """
    js = np.union1d(
        np.arange(np.ceil(j_lo), np.floor(j_hi) + 1.0),
        np.linspace(j_lo, j_hi, n_real),
    )
    d1 = f.field(2 * js + 1, 2 * js) - f.field(2 * js - 1, 2 * js) - 2.0
    d2 = (
        f.field(2 * js - 1, 2 * js)
        - f.field(2 * js - 1, 2 * js - 2)
        - 4.0 / (1.0 - f.theta)
    )
    dev = np.maximum(np.abs(d1), np.abs(d2))
    i = int(np.argmax(dev))
    return CheckReport(
        name="calibration_1d_equalities",
        passed=bool(dev[i] <= tol),
        max_violation=float(dev[i]),
        argmax=(float(js[i]),),
        grid=f"j in [{j_lo}, {j_hi}], {len(js)} values incl. integers",
        details={"theta": f.theta, "tolerance": tol},
    )


def verify_inequality_horizontal(
    f: CalibrationField1D,
    n: int = 201,
    lo: float = -3.0,
    hi: float = 3.0,
    slack: float = 1e-9,
    eq_tol: float = 1e-12,
) -> CheckReport:
    """F(x2,z) - F(x1,z) <= (x2-z)^3 - (x1-z)^3 for x1 <= x2.

    Equality must hold whenever [x1, x2] stays inside the cap-free band
    |x - z| <= sigma; that regime is checked to eq_tol.
    """
    xg = np.linspace(lo, hi, n)
    zg = np.linspace(lo, hi, n)
    s = f.cubic.sigma
    worst = -np.inf
    arg = None
    worst_eq = 0.0
    pair_ok = xg[None, :] >= xg[:, None]
    for z in zg:
        fx = f.field(xg, z)
        cube = (xg - z) ** 3
        lhs = fx[None, :] - fx[:, None]
        rhs = cube[None, :] - cube[:, None]
        gap = np.where(pair_ok, lhs - rhs, -np.inf)
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        if gap[i, j] > worst:
            worst, arg = float(gap[i, j]), (float(xg[i]), float(xg[j]), float(z))
        in_band = np.abs(xg - z) <= s
        eq_pair = pair_ok & in_band[None, :] & in_band[:, None]
        if np.any(eq_pair):
            worst_eq = max(worst_eq, float(np.max(np.abs(np.where(eq_pair, lhs - rhs, 0.0)))))
    passed = worst <= slack and worst_eq <= eq_tol
    return CheckReport(
        name="calibration_1d_horizontal_inequality",
        passed=bool(passed),
        max_violation=float(worst),
        argmax=arg,
        grid=f"(x1,x2,z) on [{lo},{hi}]^3, {n} points per axis",
        details={
            "theta": f.theta,
            "slack": slack,
            "equality_regime_max_deviation": worst_eq,
            "equality_tolerance": eq_tol,
        },
    )


def verify_inequality_vertical(
    f: CalibrationField1D,
    n: int = 401,
    lo: float = -3.0,
    hi: float = 3.0,
    slack: float = 1e-9,
    eq_tol: float = 1e-12,
) -> CheckReport:
    """Hoelder-type bound phi(b) - phi(a) <= 2^(2-theta) |b-a|^theta.

    Saturates exactly at (a, b) = (-1, 1), the jump-cost normalization.
    """
    th = f.theta
    g = np.linspace(lo, hi, n)
    phi = np.asarray(f.cubic.value(g))
    lhs = phi[None, :] - phi[:, None]
    rhs = 2.0 ** (2.0 - th) * np.abs(g[None, :] - g[:, None]) ** th
    gap = lhs - rhs
    i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
    eq_dev = abs(
        (f.cubic.value(1.0) - f.cubic.value(-1.0)) - 2.0 ** (2.0 - th) * 2.0**th
    )
    passed = gap[i, j] <= slack and eq_dev <= eq_tol
    return CheckReport(
        name="calibration_1d_vertical_inequality",
        passed=bool(passed),
        max_violation=float(gap[i, j]),
        argmax=(float(g[i]), float(g[j])),
        grid=f"(a,b) on [{lo},{hi}]^2, {n} points per axis",
        details={
            "theta": th,
            "slack": slack,
            "saturation_deviation_at_(-1,1)": float(eq_dev),
            "equality_tolerance": eq_tol,
        },
    )


def _require_normalized(p: Params1D) -> None:
    ok = (
        abs(p.alpha - alpha_theta(p.theta)) <= 1e-12 * alpha_theta(p.theta)
        and abs(p.beta - 3.0) <= 1e-12
        and p.m == 1.0
    )
    if not ok:
        raise ValueError(
            "telescopic bound requires normalized parameters "
            "(alpha = alpha_theta, beta = 3, m = 1)"
        )


def telescopic_bound(
    window: Interval,
    v: PureJump1D,
    p: Params1D,
    collar: float = 0.1,
) -> tuple[float, float]:
    """Calibration lower bound on (-(2k+1), 2k+1) for collar-matching v.

    Returns (lhs, rhs) with lhs = energy of v and rhs = F(b, 2k) - F(a, -2k).
    The identities force rhs = energy of the canonical staircase, so
    lhs >= rhs certifies minimality against v.
    """
    _require_normalized(p)
    b = window.b
    k = round((b - 1.0) / 2.0)
    if k < 0 or b != 2.0 * k + 1.0 or window.a != -b:
        raise ValueError("window must be (-(2k+1), 2k+1) for integer k >= 0")
    a = window.a

    pos = v.positions
    if np.any((pos <= a + collar) & (pos >= a)) or np.any((pos >= b - collar) & (pos <= b)):
        raise ValueError("competitor jumps inside the endpoint collars")
    lo_val = float(v(a + 0.5 * collar))
    hi_val = float(v(b - 0.5 * collar))
    if abs(lo_val + 2.0 * k) > 1e-9 or abs(hi_val - 2.0 * k) > 1e-9:
        raise ValueError(
            f"competitor must take the staircase values -+{2 * k} on the collars"
        )

    lhs = jf_1d(window, v, p).total
    f = CalibrationField1D.for_theta(p.theta)
    rhs = f.field(b, 2.0 * k) - f.field(a, -2.0 * k)
    return float(lhs), float(rhs)
