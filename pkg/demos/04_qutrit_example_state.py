"""
Both criteria on a noisy three-qutrit state
===========================================

``rho_x = (1 - x) I / 27 + x |psi><psi|`` with
``|psi> = (|012> + |021> + |111>) / sqrt 3``.
"""

# %%
import numpy as np

from gmecorr import StateSpec, analyze, example3_state, find_threshold, pure_gme_concurrence
from gmecorr.criteria import theorem1_margins

# %%
psi = example3_state()
print("exact GME concurrence of the pure state:", pure_gme_concurrence(psi))
rep = analyze(psi)
for r in rep.records:
    print(f"k={r.k}  M_k={r.m_k:.6f}  threshold={r.threshold:.6f}  margin={r.margin:+.6f}")
print("best k:", rep.best_k, " concurrence bound:", rep.theorem2_bound)

# %%
# M_k saturates from k = 4 on: the unfoldings have rank 4.  The line
# 4.044882 x - 3.628874 is the k = 4 margin; k = 3 fires slightly earlier.
family = StateSpec("example3-isotropic", 3).along("x")
for k in (3, 4):
    print(f"k={k}: onset x = {find_threshold(family, 'theorem1', 0, 1, k=k):.6f}")
print(f"bound: onset x = {find_threshold(family, 'theorem2', 0, 1):.6f}")

# %%
xs = np.linspace(0.8, 1, 5)
print(np.round([theorem1_margins(family(x))[3] for x in xs], 6))
