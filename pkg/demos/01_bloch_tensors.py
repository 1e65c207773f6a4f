"""
Correlation tensors of a tripartite state
=========================================

Expand a three-qubit GHZ state in the Pauli / Gell-Mann basis, look at the
seven correlation tensors, and rebuild the density matrix from them.
"""

# %%
import numpy as np

from gmecorr import correlation_tensors, gellmann_basis, ghz, reconstruct, reduced_purities
from gmecorr.bloch import closed_form_purities, purity_expansion

np.set_printoptions(precision=4, suppress=True)

# %%
# The basis: symmetric, antisymmetric, then diagonal generators.  For d=2
# these are X, Y, Z.
for g in gellmann_basis(2):
    print(g)

# %%
rho = ghz(2).projector()
data = correlation_tensors(rho)
print("tensor norms:", data.norms())
print("nonzero three-body correlations:")
for ix in np.argwhere(np.abs(data.T123) > 1e-12):
    print("  ", "xyz"[ix[0]] + "xyz"[ix[1]] + "xyz"[ix[2]], data.T123[tuple(ix)])

# %%
# Round trip back to the matrix.
back = reconstruct(data)
print("max reconstruction error:", np.max(np.abs(back.matrix - rho.matrix)))

# %%
# Marginal purities by partial trace agree with the tensor-norm closed forms,
# and for a pure state the purity expands as 1/d^3 + A/(2d^2) + B/(4d) + C/8.
print(reduced_purities(rho))
print(closed_form_purities(data))
print("A, B, C =", data.A, data.B, data.C, " expansion:", purity_expansion(data))
