"""
Where the uncorrected concurrence bound fails
=============================================

``|0> (x) (|00> + |11>)/sqrt 2`` is a product across the cut 1|23, so its
GME concurrence is zero.  Its three-body tensor still has norm ``sqrt 3``,
which makes ``|T123| / (2 sqrt 2) - 1/2`` positive.

Redoing the pure-state estimate with the coefficient of ``A`` in the purity
expansion equal to ``(d - 1) / (2 d^2)`` gives the offset
``((d-1)/d) sqrt((d+1)/d)``, implemented as ``theorem2_bound_corrected``.
"""

# %%
import numpy as np

from gmecorr import PureState, pure_gme_concurrence, random_biseparable_pure, theorem2_bound
from gmecorr.criteria import theorem2_bound_corrected
from gmecorr.states import sample_seed

# %%
amps = np.zeros(8)
amps[[0, 3]] = 1 / np.sqrt(2)
psi = PureState(2, amps)
print("exact:", pure_gme_concurrence(psi))
print("uncorrected bound:", theorem2_bound(psi))
print("corrected bound:", theorem2_bound_corrected(psi))

# %%
for d in (2, 3):
    states = [random_biseparable_pure(d, "1|23", sample_seed(0, i)) for i in range(1000)]
    flagged = sum(theorem2_bound(s) > 1e-9 for s in states)
    flagged_c = sum(theorem2_bound_corrected(s) > 1e-9 for s in states)
    print(f"d={d}: uncorrected flags {flagged}/1000 biseparable states, corrected flags {flagged_c}")
