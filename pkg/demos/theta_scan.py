"""
Does the planar construction survive theta > 0?
===============================================

Everything in the 2D construction generalizes mechanically: alpha and the
cubic pick up their theta dependence and the profile nodes move.  Whether
the resulting field still satisfies the gap bound is open.  This scan
measures the worst violation per theta; it reports, never asserts.
"""

import numpy as np

from staircal import explore_theta_scan, verify_prop_hypotheses, CalibrationField2D

# ----------------------------------------------------------------------
# At theta = 0 the hypotheses hold to roundoff.

base = verify_prop_hypotheses(CalibrationField2D.for_theta(0.0), nx=51, nz=101)
print(f"theta = 0 reference: pass={base.passed}, worst gap {base.max_violation:.3g}\n")

# For theta > 0 the same grids show genuine violations that grow with
# theta.  The scan records them as findings.
thetas = np.round(np.arange(0.1, 0.95, 0.1), 10)
reps = explore_theta_scan(thetas, nx=51, nz=101)

print("theta   max violation   at (x, z1, z2)")
for th, rep in zip(thetas, reps):
    x, z1, z2 = rep.argmax
    print(f"{th:4.1f}    {rep.max_violation:12.6f}   ({x:.3f}, {z1:.3f}, {z2:.3f})")

print("\nworst offender details:")
worst = max(reps, key=lambda r: r.max_violation)
print(f"  {worst.name}: violation {worst.max_violation:.6f}")
print(f"  unit-gap residual {worst.details['unit_gap_identity_max_residual']:.3g}")
print("  (scan entries are exploratory: they pass regardless of outcome)")
