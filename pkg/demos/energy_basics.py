"""
Evaluating the jump energy in one and two dimensions
====================================================

The functional charges alpha * |jump|^theta for every discontinuity plus
beta * integral (u - forcing)^2 for deviating from the linear forcing.
This demo evaluates it exactly on a few hand-built competitors.
"""

import numpy as np

from staircal import (
    EnergyBreakdown,
    Interval,
    Params1D,
    Params2D,
    Polygon,
    PureJump1D,
    Staircase1D,
    alpha_theta,
    jf_1d,
    jf_2d,
    normalize_params,
    PiecewiseCell2D,
    InterfacePolyline,
)

# ----------------------------------------------------------------------
# 1. The canonical staircase on (-3, 3) in the normalized frame.
#    Two interior jumps of height 2 cost 4 each; the sawtooth residual
#    u - x integrates to 6.  Total: 14.

p = Params1D(theta=0.0, alpha=alpha_theta(0.0), beta=3.0, m=1.0)
window = Interval(-3.0, 3.0)
stair = Staircase1D(h=1.0, v=1.0, tau0=0.0).restrict(window)

e = jf_1d(window, stair, p)
print("staircase on (-3,3):")
print(f"  jump term     {e.jump_term}")
print(f"  fidelity term {e.fidelity_term}")
print(f"  total         {e.total}")

# 2. A competitor without jumps pays pure fidelity.
flat = PureJump1D(base=0.0, jumps=())
print(f"constant 0 on (-1,1): {jf_1d(Interval(-1.0, 1.0), flat, p).total}")

# 3. Oblique translation leaves the energy invariant: shift the window by
#    delta and the function by (delta, m*delta) along the forcing line.
delta = 0.731
shifted = jf_1d(Interval(-3.0 + delta, 3.0 + delta), stair.translate(delta, p.m), p)
print(f"translated copy:      {shifted.total}  (drift {abs(shifted.total - e.total):.2e})")

# 4. Homothety: general parameters reduce to the normalized frame by one
#    zoom.  The energies match after the analytic rescaling.
p_gen = Params1D(theta=0.0, alpha=2.5, beta=1.2, m=-0.8)
nz = normalize_params(p_gen)
u_gen = PureJump1D(base=0.3, jumps=((-0.8, 1.1), (0.4, -0.6)))
e_gen = jf_1d(window, u_gen, p_gen).total
w_n = Interval(*nz.transform_window((window.a, window.b)))
u_n = PureJump1D(
    nz.transform_value(u_gen.base),
    tuple((nz.transform_point(t), nz.transform_value(h)) for t, h in u_gen.jumps),
)
e_n = jf_1d(w_n, u_n, nz.params).total
print(f"homothety check:      {e_gen:.12f} vs {nz.scale * e_n:.12f}")

# 5. In 2D the same accounting runs over polygonal cells: the unit square
#    filled with the value 0 against forcing <e1, x> has energy 1.
p2 = Params2D(theta=0.0, alpha=alpha_theta(0.0), beta=3.0, xi=(1.0, 0.0))
square = Polygon.rectangle(0.0, 0.0, 1.0, 1.0)
cells = PiecewiseCell2D(((square, 0.0),), ())
print(f"unit square, u = 0:   {jf_2d(square, cells, p2).total}")

# 6. Add a vertical interface and the jump term pays length * |gap|^theta.
left = Polygon.rectangle(0.0, 0.0, 0.5, 1.0)
right = Polygon.rectangle(0.5, 0.0, 1.0, 1.0)
iface = InterfacePolyline(np.array([[0.5, 0.0], [0.5, 1.0]]), 0.0, 1.0)
split = PiecewiseCell2D(((left, 0.0), (right, 1.0)), (iface,))
e2 = jf_2d(square, split, p2)
print(f"split square:         jump {e2.jump_term}, fidelity {e2.fidelity_term:.6f}")
