"""
Concurrence lower bound on GHZ / W mixtures
===========================================

``rho = (1 - x - y) I / 8 + x |GHZ><GHZ| + y |W><W|``.  The bound
``max(|T123| / (2 sqrt 2) - 1/2, 0)`` evaluates to
``max((sqrt(72 x^2 + 66 y^2) - 6) / 12, 0)`` because
``|T123|^2 = 4 x^2 + 11 y^2 / 3`` on this family.
"""

# %%
import numpy as np

from gmecorr import correlation_tensors, ghz_w_mix, theorem2_bound
from gmecorr.criteria import theorem2_bound_corrected

# %%
grid = np.linspace(0, 1, 11)
print("bound g(x, y); rows x, columns y; '.' marks non-physical points")
for x in grid:
    cells = []
    for y in grid:
        if x + y > 1 + 1e-12:
            cells.append("   .  ")
        else:
            cells.append(f"{theorem2_bound(ghz_w_mix(x, y)):6.3f}")
    print(f"x={x:.1f} " + " ".join(cells))

# %%
x, y = 0.6, 0.3
t = np.linalg.norm(correlation_tensors(ghz_w_mix(x, y)).T123)
print("|T123|^2 =", t**2, " 4x^2 + 11y^2/3 =", 4 * x * x + 11 * y * y / 3)

# %%
# The sound variant subtracts ((d-1)/d) sqrt((d+1)/d) instead of (d-1)/d and
# certifies a smaller region (see 05_bound_on_biseparable_states.py).
print("uncorrected:", theorem2_bound(ghz_w_mix(1, 0)), " corrected:", theorem2_bound_corrected(ghz_w_mix(1, 0)))
