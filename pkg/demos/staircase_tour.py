"""
Why the minimizer is a staircase
================================

Balancing the jump cost against the fidelity cost fixes one optimal step
length H and rise V = M*H.  This demo computes them, scans the energy
density to confirm the optimum, and lets an exhaustive search rediscover
the staircase from scratch.
"""

import numpy as np

from staircal import (
    Interval,
    Params1D,
    alpha_theta,
    brute_force_1d,
    canonical_h_v,
    unit_energy_density,
)

# ----------------------------------------------------------------------
# 1. The optimal step length for several theta, in the normalized frame
#    (alpha = alpha_theta, beta = 3, M = 1) where H = V = 1 by design.

print("theta    H          V")
for th in (0.0, 0.2, 0.4, 0.6, 0.8):
    h, v = canonical_h_v(Params1D(th, alpha_theta(th), 3.0, 1.0))
    print(f"{th:4.1f}  {h:.12f}  {v:.12f}")

# 2. Away from the normalized frame the closed form still minimizes the
#    per-unit-length energy density, as a scan confirms.
p = Params1D(theta=0.3, alpha=1.7, beta=2.2, m=-1.4)
h_star, v_star = canonical_h_v(p)
hs = np.geomspace(h_star / 4, h_star * 4, 4001)
dens = np.array([unit_energy_density(h, p) for h in hs])
h_scan = hs[int(np.argmin(dens))]
print(f"\nclosed form H = {h_star:.6f}, scan argmin = {h_scan:.6f}")
print(f"density at H:    {unit_energy_density(h_star, p):.9f}")
print(f"density at scan: {dens.min():.9f}")

# 3. Hand the problem to a dynamic program over gridded jump positions and
#    values: with boundary values -2 and 2 on (-3, 3) it returns the
#    staircase with jumps at -1 and 1, energy 14.
res = brute_force_1d(
    Interval(-3.0, 3.0),
    (-2.0, 2.0),
    Params1D(0.0, alpha_theta(0.0), 3.0, 1.0),
    position_step=0.05,
    level_step=0.1,
    budget=4,
)
print(f"\nbrute force: energy {res.energy}")
print(f"jump positions {res.minimizer.positions.tolist()}")
print(f"jump heights   {res.minimizer.heights.tolist()}")
print(f"(searched {res.n_positions} positions x {res.n_levels} levels, budget {res.budget})")
