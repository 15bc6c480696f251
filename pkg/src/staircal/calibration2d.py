"""The planar calibration: field A, forms omega_z, and the flux functional G.

A(x, z) evaluates the chord-saturating profile (psi module) at the truncated
cubic of z - x, with (x, z) first folded into the fundamental domain
[0, 1] x R by (2, 2)-periodicity and evenness.  Pairing A with the 1D field
F in the form omega_z = A dx + F dy yields a flux functional G(window, v)
over piecewise-constant v that depends only on boundary data, lower-bounds
the energy, and saturates on the bi-staircase: the machine checks of those
three facts live here.

Everything asserted is for theta = 0; the same formulas parametrized by
theta power the report-only scan at the bottom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .calibration1d import CalibrationField1D, TruncatedCubic
from .curve import InterfaceCurve, g_theta
from .energy2d import CellComplexError, PiecewiseCell2D, integral_min_quadratic, jf_2d
from .geometry import Polygon, polyline_length, rect_bounds
from .params import Params2D, alpha_theta, rho_theta
from .quadrature import integrate_segments
from .reports import CheckReport, TrialReport
from .psi import cap_values, psi_piecewise

__all__ = [
    "CalibrationField2D",
    "FormIntegrand",
    "a_field",
    "line_integral_form",
    "g_functional",
    "g_definition_form",
    "GResult",
    "verify_prop_hypotheses",
    "verify_minimality_chain",
    "saturation_check",
    "explore_theta_scan",
]


@dataclass(frozen=True)
class CalibrationField2D:
    """Planar field A paired with the 1D potential F, plus its constants."""

    theta: float
    base: CalibrationField1D

    def __post_init__(self) -> None:
        if self.base.theta != self.theta:
            raise ValueError("base field and planar field must share theta")

    @classmethod
    def for_theta(cls, theta: float = 0.0) -> "CalibrationField2D":
        return cls(theta, CalibrationField1D.for_theta(theta))

    @property
    def alpha(self) -> float:
        return alpha_theta(self.theta)

    @property
    def rho(self) -> float:
        return rho_theta(self.theta)

    @property
    def cubic(self) -> TruncatedCubic:
        return self.base.cubic

    @staticmethod
    def fold(x, z):
        """Map (x, z) to the fundamental domain [0, 1] x R.

        First translate by even integers along the diagonal, then reflect
        through the origin if x lands negative.
        """
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        m = np.floor(0.5 * (x + 1.0))
        xf = x - 2.0 * m
        zf = z - 2.0 * m
        neg = xf < 0.0
        return np.where(neg, -xf, xf), np.where(neg, -zf, zf)

    def a(self, x, z):
        """Field value A(x, z) anywhere in the plane."""
        xf, zf = self.fold(x, z)
        cub = self.cubic
        c = np.asarray(cub.value(-xf))
        d = np.asarray(cub.value(1.0 - xf))
        cap_c, cap_d = cap_values(c, d, self.alpha, self.rho)
        s = cub.value(zf - xf)
        out = np.asarray(psi_piecewise(s, c, d, cap_c, cap_d, self.rho))
        return out if out.ndim else float(out)

    def f(self, x, z):
        """Companion 1D potential F(x, z) (y-independent)."""
        return self.base.field(x, z)


def a_field(f2: CalibrationField2D, x, z):
    """Field value (module-level alias for the method)."""
    return f2.a(x, z)


@dataclass(frozen=True)
class FormIntegrand:
    """The 1-form omega_z = A(x, z) dx + F(x, z) dy at a fixed level z."""

    z: float
    f2: CalibrationField2D

    def a(self, x):
        return self.f2.a(x, self.z)

    def f(self, x):
        return self.f2.f(x, self.z)


def _split_tasks_at_integers(tasks: np.ndarray) -> np.ndarray:
    """Split non-vertical segment tasks at interior integer x values.

    The horizontal field component has kinks (and root-type cusps) exactly at
    integer x, so handing the adaptive quadrature pieces with those points as
    endpoints keeps refinement shallow.  Cut points are placed at the exact
    integers; y is interpolated linearly.
    """
    ax, bx = tasks[:, 0], tasks[:, 2]
    lo = np.minimum(ax, bx)
    hi = np.maximum(ax, bx)
    # an integer lies strictly inside (lo, hi) iff floor(lo)+1 <= ceil(hi)-1
    needs = (ax != bx) & (np.floor(lo) + 1.0 <= np.ceil(hi) - 1.0)
    if not bool(np.any(needs)):
        return tasks
    out = [tasks[~needs]]
    for row in tasks[needs]:
        x0, y0, x1, y1, z, wgt = row
        step = 1.0 if x1 > x0 else -1.0
        first = np.floor(x0) + 1.0 if step > 0 else np.ceil(x0) - 1.0
        cuts = np.arange(first, x1, step)
        cuts = cuts[(cuts != x0) & (cuts != x1)]
        xs = np.concatenate([[x0], cuts, [x1]])
        ys = y0 + (xs - x0) / (x1 - x0) * (y1 - y0)
        n_sub = len(xs) - 1
        sub = np.column_stack(
            [xs[:-1], ys[:-1], xs[1:], ys[1:], np.full(n_sub, z), np.full(n_sub, wgt)]
        )
        out.append(sub)
    return np.concatenate(out)


def _tasks_integral(tasks: np.ndarray, f2: CalibrationField2D, tol: float) -> float:
    """Sum of weighted segment integrals of omega_z.

    tasks rows: (ax, ay, bx, by, z, weight).  Vertical segments are exact
    (F is y-independent and A contributes nothing); the rest share one
    batched adaptive quadrature after splitting at integer x crossings.
    """
    if len(tasks) == 0:
        return 0.0
    tasks = np.asarray(tasks, dtype=float)
    tasks = _split_tasks_at_integers(tasks)
    dx = tasks[:, 2] - tasks[:, 0]
    dy = tasks[:, 3] - tasks[:, 1]
    vert = dx == 0.0
    total = 0.0
    if np.any(vert):
        t = tasks[vert]
        total += float(
            np.sum(t[:, 5] * np.asarray(f2.f(t[:, 0], t[:, 4])) * (t[:, 3] - t[:, 1]))
        )
    rest = tasks[~vert]
    if len(rest):
        rax, rdx = rest[:, 0], rest[:, 2] - rest[:, 0]
        rdy = rest[:, 3] - rest[:, 1]
        rz, rw = rest[:, 4], rest[:, 5]

        def integrand(seg: np.ndarray, t: np.ndarray) -> np.ndarray:
            x = rax[seg] + t * rdx[seg]
            z = rz[seg]
            val = np.asarray(f2.a(x, z)) * rdx[seg] + np.asarray(f2.f(x, z)) * rdy[seg]
            return rw[seg] * val

        total += integrate_segments(integrand, len(rest), tol=tol)
    return total


def line_integral_form(gamma: np.ndarray, w: FormIntegrand, tol: float = 1e-10) -> float:
    """Integral of omega_z along a polyline given as an (n, 2) point array."""
    pts = np.asarray(gamma, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValueError("polyline needs an (n>=2, 2) point array")
    n = len(pts) - 1
    tasks = np.column_stack(
        [pts[:-1], pts[1:], np.full(n, w.z), np.ones(n)]
    )
    return _tasks_integral(tasks, w.f2, tol)


def _boundary_tasks(window: Polygon, v: PiecewiseCell2D) -> np.ndarray:
    """Region edges lying on the window boundary, tagged with inside values.

    Region polygons are counterclockwise, so these edges already run
    counterclockwise around the window.  Their total length must cover the
    whole perimeter, otherwise boundary values are missing somewhere.
    """
    x0, y0, x1, y1 = rect_bounds(window)
    tol = 1e-12
    rows = []
    covered = 0.0
    for poly, val in v.regions:
        p = poly.vertices
        q = np.roll(p, -1, axis=0)
        on = (np.abs(p[:, 0] - x0) <= tol) & (np.abs(q[:, 0] - x0) <= tol)
        on |= (np.abs(p[:, 0] - x1) <= tol) & (np.abs(q[:, 0] - x1) <= tol)
        on |= (np.abs(p[:, 1] - y0) <= tol) & (np.abs(q[:, 1] - y0) <= tol)
        on |= (np.abs(p[:, 1] - y1) <= tol) & (np.abs(q[:, 1] - y1) <= tol)
        if not bool(np.any(on)):
            continue
        pp, qq = p[on], q[on]
        m = len(pp)
        rows.append(np.column_stack([pp, qq, np.full(m, val), np.ones(m)]))
        # boundary edges are axis-aligned, so the L1 step is their length
        covered += float(np.sum(np.abs(qq - pp)))
    perimeter = 2.0 * (x1 - x0) + 2.0 * (y1 - y0)
    if abs(covered - perimeter) > 1e-9 * perimeter:
        raise CellComplexError(
            f"boundary edges cover length {covered}, window perimeter is {perimeter}"
        )
    if not rows:
        return np.zeros((0, 6))
    return np.concatenate(rows, axis=0)


def g_definition_form(
    window: Polygon, v: PiecewiseCell2D, f2: CalibrationField2D, tol: float = 1e-10
) -> float:
    """G as defined: integrate omega_{inside value} along the window boundary."""
    return _tasks_integral(_boundary_tasks(window, v), f2, tol)


def _interface_tasks(v: PiecewiseCell2D) -> np.ndarray:
    rows = []
    for seg in v.interfaces:
        pts = seg.points
        n = len(pts) - 1
        for z, wgt in ((seg.right, 1.0), (seg.left, -1.0)):
            rows.append(
                np.column_stack([pts[:-1], pts[1:], np.full(n, z), np.full(n, wgt)])
            )
    if not rows:
        return np.empty((0, 6))
    return np.vstack(rows)


def g_representation_form(
    window: Polygon, v: PiecewiseCell2D, f2: CalibrationField2D, tol: float = 1e-10
) -> float:
    """G rewritten per region and interface.

    Each region loop integral of omega_{value} collapses exactly to the
    capped-quadratic area integral (A contributes nothing on a closed loop
    because it is continuous, y-independent, and has a Lipschitz primitive;
    F is C^1 in x), so quadrature is spent only on the interface difference
    terms.
    """
    sigma = f2.cubic.sigma
    total = 0.0
    for poly, val in v.regions:
        total += integral_min_quadratic(poly.vertices, val, sigma)
    total += _tasks_integral(_interface_tasks(v), f2, tol)
    return total


@dataclass(frozen=True)
class GResult:
    definition: float
    representation: float

    @property
    def agreement(self) -> float:
        return abs(self.definition - self.representation)


def g_functional(
    window: Polygon,
    v: PiecewiseCell2D,
    f2: CalibrationField2D,
    tol: float = 1e-10,
    agreement_tol: float | None = 1e-7,
) -> GResult:
    """Both computations of G; raises if they disagree beyond agreement_tol."""
    res = GResult(
        definition=g_definition_form(window, v, f2, tol),
        representation=g_representation_form(window, v, f2, tol),
    )
    if agreement_tol is not None and res.agreement > agreement_tol:
        raise AssertionError(
            f"flux functional forms disagree: {res.definition} vs "
            f"{res.representation}"
        )
    return res


def verify_prop_hypotheses(
    f2: CalibrationField2D,
    nx: int = 101,
    nz: int = 201,
    z_lo: float = -3.0,
    z_hi: float = 3.0,
    slack: float = 1e-9,
    eq_tol: float = 1e-12,
    seam_tol: float = 1e-9,
    exploratory: bool = False,
) -> CheckReport:
    """Grid checks of the planar calibration hypotheses.

    Sub-checks: the unit-gap identity [A(x,1)-A(x,0)]^2 + [F(x,1)-F(x,0)]^2
    = alpha^2 with positive A-gap; the general-gap bound <= alpha^2
    (z2-z1)^(2 theta); F(x,1)-F(x,0) = g_theta(x); continuity across the
    folding seams x in {0, 1}; the stated extension symmetries.
    """
    th = f2.theta
    al = f2.alpha
    xg = np.linspace(0.0, 1.0, nx)
    zg = np.linspace(z_lo, z_hi, nz)

    da = np.asarray(f2.a(xg, 1.0)) - np.asarray(f2.a(xg, 0.0))
    df = np.asarray(f2.f(xg, 1.0)) - np.asarray(f2.f(xg, 0.0))
    eq_resid = np.abs(da * da + df * df - al * al)
    i_eq = int(np.argmax(eq_resid))
    sign_margin = float(np.min(da))
    g_resid = float(np.max(np.abs(df - g_theta(xg, th))))

    worst = -np.inf
    arg = None
    for x in xg:
        a_line = np.asarray(f2.a(x, zg))
        f_line = np.asarray(f2.f(x, zg))
        lhs = (a_line[None, :] - a_line[:, None]) ** 2 + (
            f_line[None, :] - f_line[:, None]
        ) ** 2
        rhs = al * al * np.abs(zg[None, :] - zg[:, None]) ** (2.0 * th)
        gap = lhs - rhs
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        if gap[i, j] > worst:
            worst, arg = float(gap[i, j]), (float(x), float(zg[i]), float(zg[j]))

    eps = 1e-12
    seam = 0.0
    for x_seam in (0.0, 1.0, 2.0, -1.0):
        left = np.asarray(f2.a(x_seam - eps, zg))
        right = np.asarray(f2.a(x_seam + eps, zg))
        seam = max(seam, float(np.max(np.abs(left - right))))

    ext = max(
        float(np.max(np.abs(np.asarray(f2.a(0.0, zg)) - np.asarray(f2.a(0.0, -zg))))),
        float(
            np.max(np.abs(np.asarray(f2.a(1.0, zg + 2.0)) - np.asarray(f2.a(1.0, -zg))))
        ),
        float(
            np.max(
                np.abs(
                    np.asarray(f2.a(xg + 2.0, zg[: len(xg)] + 2.0))
                    - np.asarray(f2.a(xg, zg[: len(xg)]))
                )
            )
        ),
    )

    passed = (
        float(eq_resid[i_eq]) <= slack
        and sign_margin > 0.0
        and g_resid <= eq_tol
        and worst <= slack
        and seam <= seam_tol
        and ext <= eq_tol
    )
    return CheckReport(
        name="calibration_2d_hypotheses",
        passed=bool(passed),
        max_violation=float(worst),
        argmax=arg,
        grid=f"x: {nx} on [0,1]; z: {nz} on [{z_lo},{z_hi}] (pairs)",
        exploratory=exploratory,
        details={
            "theta": th,
            "unit_gap_identity_max_residual": float(eq_resid[i_eq]),
            "unit_gap_identity_argmax_x": float(xg[i_eq]),
            "a_gap_sign_margin": sign_margin,
            "f_gap_equals_g_max_deviation": g_resid,
            "seam_continuity_gap": seam,
            "extension_symmetry_max_deviation": ext,
            "slack": slack,
            "equality_tolerance": eq_tol,
        },
    )


def verify_minimality_chain(
    window: Polygon,
    competitors: list[PiecewiseCell2D],
    f2: CalibrationField2D,
    p: Params2D,
    reference: PiecewiseCell2D,
    jf_reference: float | None = None,
    tol: float = 1e-7,
    quad_tol: float = 1e-10,
) -> TrialReport:
    """Energy >= flux chain for a batch of competitors.

    Anchors once on the reference (both G forms must agree and match its
    energy), then checks per competitor: energy >= G(v) - tol and
    G(v) = G(reference) within tol.  min_excess is the worst energy excess
    over the reference energy.
    """
    jf_ref = (
        jf_2d(window, reference, p).total if jf_reference is None else float(jf_reference)
    )
    g_ref = g_functional(window, reference, f2, quad_tol, agreement_tol=tol)
    anchor_gap = abs(g_ref.definition - jf_ref)

    min_excess = np.inf
    argmin = None
    worst_chain = np.inf
    worst_match = 0.0
    for idx, v in enumerate(competitors):
        jf_v = jf_2d(window, v, p).total
        g_v = g_definition_form(window, v, f2, quad_tol)
        worst_chain = min(worst_chain, jf_v - g_v)
        worst_match = max(worst_match, abs(g_v - g_ref.definition))
        excess = jf_v - jf_ref
        if excess < min_excess:
            min_excess, argmin = excess, idx
    n = len(competitors)
    passed = (
        anchor_gap <= tol
        and g_ref.agreement <= tol
        and (n == 0 or (worst_chain >= -tol and worst_match <= tol))
    )
    rep = TrialReport(
        name="minimality_chain",
        trials=n,
        min_excess=float(min_excess if n else 0.0),
        argmin=argmin,
        passed=bool(passed and (n == 0 or min_excess >= -tol)),
        tolerance=tol,
        details={
            "jf_reference": jf_ref,
            "g_reference_definition": g_ref.definition,
            "g_reference_representation": g_ref.representation,
            "anchor_gap": anchor_gap,
            "min_chain_slack": float(worst_chain if n else 0.0),
            "max_g_mismatch": worst_match,
        },
    )
    return rep


def saturation_check(
    f2: CalibrationField2D,
    curve: InterfaceCurve,
    n_points: int = 1000,
    exclusion: float = 1e-8,
    tol: float = 1e-8,
) -> CheckReport:
    """Pointwise saturation of the form along the jump set.

    On the interface curve the difference field E = (A(t, below) - A(t,
    above), F(t, below) - F(t, above)) must satisfy <E, gamma'(t)> = alpha
    ||gamma'(t)||; on the vertical jump lines the F-gap must equal
    alpha 2^theta.  Points within `exclusion` of the integer corners (where
    three jump pieces meet) are excluded.
    """
    if curve.theta != f2.theta:
        raise ValueError("curve and field must share theta")
    al = f2.alpha
    half = n_points // 2
    worst = 0.0
    arg = None
    for m, lo, hi in ((0, 0.0, 1.0), (1, 1.0, 2.0)):
        ts = np.linspace(lo + exclusion, hi - exclusion, half)
        above = float(m if m % 2 == 0 else m + 1)
        below = float(m + 1 if m % 2 == 0 else m)
        ea = np.asarray(f2.a(ts, below)) - np.asarray(f2.a(ts, above))
        ef = np.asarray(f2.f(ts, below)) - np.asarray(f2.f(ts, above))
        fp = np.asarray(curve.derivative(ts))
        ratio = (ea + ef * fp) / (al * np.sqrt(1.0 + fp * fp))
        dev = np.abs(ratio - 1.0)
        i = int(np.argmax(dev))
        if dev[i] > worst:
            worst, arg = float(dev[i]), (float(ts[i]),)

    vert_dev = 0.0
    for k in range(-2, 3):
        gap = f2.f(float(k), k + 1.0) - f2.f(float(k), k - 1.0)
        vert_dev = max(vert_dev, abs(gap - al * 2.0**f2.theta))

    passed = worst <= tol and vert_dev <= 1e-12
    return CheckReport(
        name="jump_set_saturation",
        passed=bool(passed),
        max_violation=worst,
        argmax=arg,
        grid=f"{half} points per branch on (0,1) and (1,2), exclusion {exclusion}",
        details={
            "theta": f2.theta,
            "vertical_gap_max_deviation": vert_dev,
            "tolerance": tol,
        },
    )


def explore_theta_scan(
    thetas,
    nx: int = 101,
    nz: int = 201,
    z_lo: float = -3.0,
    z_hi: float = 3.0,
) -> list[CheckReport]:
    """Report-only scan of the general-gap bound for theta > 0.

    The construction is generalized verbatim (alpha_theta for 4, rho_theta
    for 2, the theta-truncated cubic for the cubic); nothing here asserts.
    Max violations per theta are evidence for or against the open extension.
    """
    out = []
    for th in np.atleast_1d(np.asarray(thetas, dtype=float)):
        f2 = CalibrationField2D.for_theta(float(th))
        rep = verify_prop_hypotheses(
            f2, nx=nx, nz=nz, z_lo=z_lo, z_hi=z_hi, exploratory=True
        )
        rep.name = f"theta_scan[{th:g}]"
        rep.passed = True
        rep.details["note"] = (
            "exploratory generalization; violations are findings, not failures"
        )
        out.append(rep)
    return out
