"""
Stress-testing planar minimality
================================

The chain JF(v) >= G(v) = G(candidate) = JF(candidate) holds for every
competitor with the candidate's boundary values.  G only sees the boundary,
so the middle equality is automatic; the work is in checking the first
inequality against adversarial perturbations.
"""

import numpy as np

from staircal import (
    cells_from_samples,
    jf_2d,
    stress_2d,
    stress_setup,
    verify_minimality_chain,
)

# ----------------------------------------------------------------------
# 1. A batch of random perturbations of the interface: curve bumps,
#    wrong-value islands, zigzag vertical segments, combinations.

rep = stress_2d(n_trials=60, seed=0)
print(f"stress batch: pass={rep.passed}, trials={rep.trials}")
print(f"  smallest energy excess:  {rep.min_excess:.6f} (competitor {rep.argmin})")
print(f"  worst chain slack:       {rep.details['min_chain_slack']:.3g}")
print(f"  flux spread over batch:  {rep.details['max_g_mismatch']:.3g}")
print(f"  anchor gap |G - JF|:     {rep.details['anchor_gap']:.3g}")

# 2. A structured competitor: replace each arc of the interface by its
#    chord.  The jump term gets cheaper (chords are shorter) but fidelity
#    loses more, and the chain still certifies the excess.
setup = stress_setup(0.0)
xs = np.array([-0.5, 0.0, 1.0, 1.5])
fs = np.asarray(setup.curve(xs))
chords = cells_from_samples(setup.window, xs, fs)

e_ref = setup.jf_reference
e_chord = jf_2d(setup.window, chords, setup.p).total
print(f"\ncandidate energy:        {e_ref:.9f}")
print(f"chord competitor energy: {e_chord:.9f}  (+{e_chord - e_ref:.6f})")

chain = verify_minimality_chain(
    setup.window, [chords], setup.f2, setup.p, setup.reference,
    jf_reference=setup.jf_reference,
)
print(f"chain on the chord competitor: pass={chain.passed}, excess {chain.min_excess:.6f}")

# 3. The empty batch is vacuously true; the candidate against itself gives
#    excess zero.  Both are useful calibration points for the harness.
empty = stress_2d(n_trials=0, seed=0)
self_rep = verify_minimality_chain(
    setup.window, [setup.reference], setup.f2, setup.p, setup.reference,
)
print(f"\nzero trials:   pass={empty.passed}, excess {empty.min_excess}")
print(f"self-compare:  pass={self_rep.passed}, excess {self_rep.min_excess}")
