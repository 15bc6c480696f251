"""Quadrature utilities: batched adaptive Gauss-Legendre and adaptive Simpson.

The adaptive Gauss-Legendre driver integrates over many parameter intervals
at once (one vectorized integrand call per refinement level), which is what
line integrals over polylines with thousands of segments need.  Integrands
are piecewise smooth with isolated kinks, so bisection converges quickly and
only kink-crossing intervals refine deeply.

Adaptive Simpson is kept deliberately independent (different nodes, different
error model) so it can serve as a second opinion in dual-quadrature oracles.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureError",
    "gl_nodes",
    "fixed_gl",
    "adaptive_gl",
    "integrate_segments",
    "adaptive_simpson",
]


class QuadratureError(RuntimeError):
    """Adaptive refinement failed to converge within its budget."""


@lru_cache(maxsize=32)
def gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def fixed_gl(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int = 20) -> float:
    x, w = gl_nodes(n)
    h = 0.5 * (b - a)
    t = a + h * (x + 1.0)
    return h * float(np.dot(np.asarray(f(t), dtype=float), w))


def _batch_gl(f, seg: np.ndarray, t0: np.ndarray, t1: np.ndarray, n: int) -> np.ndarray:
    """GL estimates for many (seg, [t0, t1]) intervals in one integrand call."""
    x, w = gl_nodes(n)
    h = 0.5 * (t1 - t0)
    nodes = t0[:, None] + h[:, None] * (x[None, :] + 1.0)
    segs = np.repeat(seg, n)
    vals = np.asarray(f(segs, nodes.ravel()), dtype=float).reshape(len(seg), n)
    return h * (vals @ w)


def integrate_segments(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    n_segments: int,
    tol: float = 1e-10,
    *,
    n: int = 8,
    max_depth: int = 48,
    max_evals: int = 50_000_000,
) -> float:
    """Sum of integral_0^1 f(i, t) dt over segments i = 0 .. n_segments-1.

    ``f(seg_indices, t_values)`` must be vectorized and return the pulled-back
    integrand including the parameterization Jacobian.  ``tol`` bounds the
    total absolute error across all segments.

    Two acceptance rules run together.  An interval retires on its own once
    its bisection error is below a tolerance share proportional to parameter
    length (halved per split), and the whole computation stops early once the
    retired errors plus every outstanding interval error sum below ``tol``.
    The global rule matters for integrands with mild root-type singularities
    where per-interval errors decay slower than the halving shares: without
    it refinement would chase a receding target into evaluation noise.
    """
    if n_segments == 0:
        return 0.0
    seg = np.arange(n_segments, dtype=np.int64)
    t0 = np.zeros(n_segments)
    t1 = np.ones(n_segments)
    est = _batch_gl(f, seg, t0, t1, n)
    tol_i = np.full(n_segments, tol / n_segments)

    total = 0.0
    err_spent = 0.0
    evals = n * n_segments
    for depth in range(max_depth + 1):
        if evals + 2 * n * len(seg) > max_evals:
            raise QuadratureError(
                f"evaluation budget exceeded ({evals} points, {len(seg)} intervals active)"
            )
        mid = 0.5 * (t0 + t1)
        seg2 = np.concatenate([seg, seg])
        lo2 = np.concatenate([t0, mid])
        hi2 = np.concatenate([mid, t1])
        child = _batch_gl(f, seg2, lo2, hi2, n)
        evals += n * len(seg2)
        m = len(seg)
        refined = child[:m] + child[m:]
        err = np.abs(refined - est)
        done = err <= tol_i
        total += float(np.sum(refined[done]))
        err_spent += float(np.sum(err[done]))
        keep = ~done
        if not bool(np.any(keep)):
            return total
        if err_spent + float(np.sum(err[keep])) <= tol:
            return total + float(np.sum(refined[keep]))
        if depth == max_depth:
            worst = float(np.max(err[keep]))
            raise QuadratureError(
                f"max depth {max_depth} reached with residual error {worst}"
            )
        seg = seg2[np.concatenate([keep, keep])]
        t0 = lo2[np.concatenate([keep, keep])]
        t1 = hi2[np.concatenate([keep, keep])]
        est = child[np.concatenate([keep, keep])]
        tol_i = 0.5 * np.concatenate([tol_i[keep], tol_i[keep]])
    raise QuadratureError("unreachable")


def adaptive_gl(
    f: Callable[[np.ndarray], np.ndarray], a: float, b: float, tol: float = 1e-12, **kw
) -> float:
    """Adaptive Gauss-Legendre on a single interval with a vectorized integrand."""
    if a == b:
        return 0.0
    span = b - a

    def pulled(_seg: np.ndarray, t: np.ndarray) -> np.ndarray:
        return np.asarray(f(a + span * t), dtype=float) * span

    return integrate_segments(pulled, 1, tol, **kw)


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-11,
    max_depth: int = 50,
) -> float:
    """Classic adaptive Simpson with a vectorized integrand, iterative stack."""
    if a == b:
        return 0.0

    def simpson(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        mid = 0.5 * (lo + hi)
        pts = np.concatenate([lo, mid, hi])
        vals = np.asarray(f(pts), dtype=float)
        m = len(lo)
        return (hi - lo) / 6.0 * (vals[:m] + 4.0 * vals[m : 2 * m] + vals[2 * m :])

    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    est = simpson(lo, hi)
    tol_i = np.array([tol])
    total = 0.0
    for depth in range(max_depth + 1):
        mid = 0.5 * (lo + hi)
        lo2 = np.concatenate([lo, mid])
        hi2 = np.concatenate([mid, hi])
        child = simpson(lo2, hi2)
        m = len(lo)
        refined = child[:m] + child[m:]
        err = np.abs(refined - est) / 15.0
        done = err <= tol_i
        if depth == max_depth and not bool(np.all(done)):
            raise QuadratureError(f"Simpson stalled at depth {max_depth}")
        # accept with the standard Richardson correction
        total += float(np.sum(refined[done] + (refined[done] - est[done]) / 15.0))
        keep = ~done
        if not bool(np.any(keep)):
            return total
        both = np.concatenate([keep, keep])
        lo, hi, est = lo2[both], hi2[both], child[both]
        tol_i = 0.5 * np.concatenate([tol_i[keep], tol_i[keep]])
    raise QuadratureError("unreachable")
