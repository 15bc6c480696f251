"""
A machine-checked minimality proof in one dimension
===================================================

The potential F(x, z) = [(3-theta) x + phi(z - x)] / (1 - theta), with phi
the truncated cubic, turns minimality into bookkeeping: summing exact
differences of F along any competitor telescopes to a lower bound that the
staircase attains with equality.
"""

import numpy as np

from staircal import (
    CalibrationField1D,
    Interval,
    Params1D,
    Staircase1D,
    jf_1d,
    random_competitor_1d,
    telescopic_bound,
    verify_equalities,
    verify_inequality_horizontal,
    verify_inequality_vertical,
)

theta = 0.25
f = CalibrationField1D.for_theta(theta)

# ----------------------------------------------------------------------
# 1. The two exact identities: crossing one step of the staircase changes
#    F by exactly 2, crossing one riser by exactly 4/(1-theta).

print(f"F(1, 0) - F(-1, 0)   = {f.field(1.0, 0.0) - f.field(-1.0, 0.0)}")
print(f"F(-1, 0) - F(-1, -2) = {f.field(-1.0, 0.0) - f.field(-1.0, -2.0)}")
print(f"4 / (1 - theta)      = {4.0 / (1.0 - theta)}")

rep = verify_equalities(f)
print(f"identity sweep: pass={rep.passed}, max deviation {rep.max_violation:.3g}")

# 2. The two inequalities behind the telescoping: monotone growth in x
#    capped by the cubic, and a Hoelder bound in z that saturates exactly
#    at the staircase jump (-1, 1).
rh = verify_inequality_horizontal(f, n=101)
rv = verify_inequality_vertical(f, n=201)
print(f"x-monotonicity:  pass={rh.passed}, worst gap {rh.max_violation:.3g}")
print(f"z-Hoelder bound: pass={rv.passed}, worst gap {rv.max_violation:.3g}")
print(f"  saturation at (-1,1): {rv.details['saturation_deviation_at_(-1,1)']:.3g}")

# 3. The telescopic bound itself.  On (-3, 3) every competitor that matches
#    the staircase near the endpoints has energy at least F(3,2) - F(-3,-2);
#    the staircase hits the bound exactly.
p = Params1D.normalized(theta)
window = Interval(-3.0, 3.0)
stair = Staircase1D(1.0, 1.0, 0.0).restrict(window)
lhs, rhs = telescopic_bound(window, stair, p)
print(f"\nstaircase energy {lhs:.12f}, lower bound {rhs:.12f}")

rng = np.random.default_rng(0)
print("\nrandom competitors (energy, excess over bound):")
for _ in range(5):
    v = random_competitor_1d(rng, k=1)
    e = jf_1d(window, v, p).total
    print(f"  {len(v.jumps)} jumps: {e:10.6f}  +{e - rhs:.6f}")
