"""Piecewise-affine profile whose graph chords never exceed a fixed length.

For -2 <= c <= 0 <= d <= 2 with c < d, the profile interpolates
(-2, 0), (c, -C), (d, D), (2, 0) and vanishes outside [-2, 2], where
C = sqrt(16 - (2-c)^2) and D = sqrt(16 - (d-c)^2) - C.  By construction the
chord between the c- and d-nodes has length exactly 4, as does the chord
from the c-node to the right endpoint; every other chord is no longer.  The
constants 16 (= alpha^2) and 2 (= rho) generalize for exploratory scans.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .reports import CheckReport

__all__ = ["PsiFunction", "psi_build", "cap_values", "psi_piecewise", "lemma_psi_verify"]


def cap_values(c, d, alpha: float = 4.0, rho: float = 2.0):
    """Node depths (C, D) making the middle and right chords saturate."""
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    a2 = alpha * alpha
    cap_c = np.sqrt(a2 - (rho - c) ** 2)
    cap_d = np.sqrt(a2 - (d - c) ** 2) - cap_c
    return cap_c, cap_d


def psi_piecewise(s, c, d, cap_c, cap_d, rho: float = 2.0):
    """Vectorized evaluation; c, d, caps may vary per point alongside s."""
    s, c, d, cap_c, cap_d = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (s, c, d, cap_c, cap_d))
    )
    eps = 1e-300
    left = -cap_c * np.clip((s + rho) / np.maximum(c + rho, eps), 0.0, 1.0)
    mid = (cap_c + cap_d) * np.clip((s - c) / np.maximum(d - c, eps), 0.0, 1.0)
    right = -cap_d * np.clip((s - d) / np.maximum(rho - d, eps), 0.0, 1.0)
    out = np.where(
        s <= c,
        np.where(s <= -rho, 0.0, left),
        np.where(
            s <= d,
            -cap_c + mid,
            np.where(s >= rho, 0.0, cap_d + right),
        ),
    )
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class PsiFunction:
    """One concrete profile with its breakpoints and node depths."""

    c: float
    d: float
    cap_c: float
    cap_d: float
    alpha: float = 4.0
    rho: float = 2.0

    @property
    def breakpoints(self) -> tuple[float, float, float, float]:
        return (-self.rho, self.c, self.d, self.rho)

    @property
    def node_values(self) -> tuple[float, float, float, float]:
        return (0.0, -self.cap_c, self.cap_d, 0.0)

    def __call__(self, s):
        return psi_piecewise(s, self.c, self.d, self.cap_c, self.cap_d, self.rho)


def psi_build(c: float, d: float, alpha: float = 4.0, rho: float = 2.0) -> PsiFunction:
    """Validated constructor; degenerate end pieces collapse continuously."""
    if not (-rho <= c <= 0.0 <= d <= rho):
        raise ValueError(f"need -{rho} <= c <= 0 <= d <= {rho}")
    if not c < d:
        raise ValueError("need c < d")
    cap_c, cap_d = cap_values(c, d, alpha, rho)
    return PsiFunction(float(c), float(d), float(cap_c), float(cap_d), alpha, rho)


def lemma_psi_verify(
    c: float,
    d: float,
    n: int = 401,
    slack: float = 1e-9,
    eq_tol: float = 1e-12,
    alpha: float = 4.0,
    rho: float = 2.0,
    exploratory: bool = False,
) -> CheckReport:
    """Grid check of the chord bound plus the six breakpoint-pair cases.

    Chord bound: (psi(s2) - psi(s1))^2 + (s2 - s1)^2 <= alpha^2 for all
    s1, s2 in [-rho, rho].  The breakpoint pairs, in order
    (-rho,c), (-rho,d), (-rho,rho), (c,d), (c,rho), (d,rho), are the only
    candidates for the maximum (the squared chord is convex along each
    affine piece).  Cases 4 and 5 are equalities by construction; case 3 is
    an equality exactly in the standard normalization; case 2 saturates as
    c -> -rho.
    """
    psi = psi_build(c, d, alpha, rho)
    a2 = alpha * alpha

    s = np.linspace(-rho, rho, n)
    vals = np.asarray(psi(s))
    chord2 = (vals[None, :] - vals[:, None]) ** 2 + (s[None, :] - s[:, None]) ** 2
    i, j = np.unravel_index(int(np.argmax(chord2)), chord2.shape)
    grid_violation = float(chord2[i, j] - a2)

    bp = np.array(psi.breakpoints)
    nv = np.array(psi.node_values)
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    cases = [
        float((nv[q] - nv[p]) ** 2 + (bp[q] - bp[p]) ** 2) for p, q in pairs
    ]
    standard = alpha == 4.0 and rho == 2.0
    eq_cases = {4: cases[3], 5: cases[4]}
    if standard:
        eq_cases[3] = cases[2]
    eq_dev = max(abs(v - a2) for v in eq_cases.values())
    le_ok = max(cases) <= a2 + slack

    passed = grid_violation <= slack and eq_dev <= eq_tol and le_ok
    return CheckReport(
        name="lemma_psi_chord_bound",
        passed=bool(passed),
        max_violation=grid_violation,
        argmax=(float(s[i]), float(s[j])),
        grid=f"(s1,s2) on [-{rho},{rho}]^2, {n} points per axis",
        exploratory=exploratory,
        details={
            "c": c,
            "d": d,
            "alpha": alpha,
            "rho": rho,
            "case_values": cases,
            "equality_case_max_deviation": eq_dev,
            "slack": slack,
            "equality_tolerance": eq_tol,
        },
    )
