"""
Ky Fan criterion for noisy three-qutrit GHZ states
==================================================

``rho_x = (1 - x) I / 27 + x |GHZ><GHZ|``.  The margin ``M_k - threshold``
is affine in ``x``; with ``k = 8`` it reads ``6.74552 x - 4.83138`` and
crosses zero at ``x = 0.716235``.
"""

# %%
import numpy as np

from gmecorr import StateSpec, find_threshold, ghz, isotropic_mix, theorem1_margin, theorem1_threshold
from gmecorr.criteria import m_k_all, theorem1_margins

# %%
print("M_k of the pure GHZ_3 state, k = 1..8:")
print(np.round(m_k_all(ghz(3)), 6))
print("thresholds:", np.round([theorem1_threshold(3, k) for k in range(1, 9)], 6))
print("margins   :", np.round(theorem1_margins(ghz(3)), 6))

# %%
# Margin along the noise line, as plotted data.
for x in np.linspace(0, 1, 11):
    print(f"x={x:.1f}  margin(k=8)={theorem1_margin(isotropic_mix(ghz(3), x), 8):+.6f}")

# %%
family = StateSpec("ghz-isotropic", 3).along("x")
for k in range(1, 9):
    try:
        print(f"k={k}: detects GME for x > {find_threshold(family, 'theorem1', 0, 1, k=k):.6f}")
    except ValueError:
        print(f"k={k}: never fires")

# %%
# The same data from the command line:
#
#   gmecorr sweep --family ghz-isotropic --d 3 --param x=0:1:101 --criterion theorem1 --k 8
#   gmecorr threshold --family ghz-isotropic --d 3 --criterion theorem1 --k 8
