"""Dense linear-algebra kernel used throughout the package.

Matrices are plain ``numpy`` arrays (``complex128`` for operators,
``float64`` for correlation-tensor unfoldings).  Tripartite subsystems are
ordered left to right, so party 1 is the leftmost Kronecker factor.
"""
from __future__ import annotations

from functools import reduce

import numpy as np

HERMITIAN_TOL = 1e-10


def kron(*mats):
    """Kronecker product of one or more matrices, left to right."""
    if not mats:
        raise ValueError("kron needs at least one matrix")
    return reduce(np.kron, (np.asarray(m) for m in mats))


def trace_product(a, b):
    """Return ``tr(a @ b)`` without forming the product."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError(f"trace_product needs equal square matrices, got {a.shape} and {b.shape}")
    return complex(np.einsum("ij,ji->", a, b))


def partial_trace(rho, dims, keep):
    """Reduce ``rho`` to the subsystems listed in ``keep``.

    Parameters
    ----------
    rho : ndarray
        Square matrix on ``H_1 (x) H_2 (x) ... (x) H_n``.
    dims : sequence of int
        Local dimensions, party 1 first.
    keep : iterable of int
        1-based party labels to keep.  Order is ignored; the result is always
        in ascending party order.  An empty selection yields a 1x1 matrix
        holding the trace.

    Returns
    -------
    ndarray
        The reduced matrix of dimension ``prod(dims[i-1] for i in keep)``.
    """
    rho = np.asarray(rho)
    dims = tuple(int(x) for x in dims)
    n = len(dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"rho has shape {rho.shape}, expected {(total, total)} for dims {dims}")
    keep = sorted(set(keep))
    if any((not isinstance(p, (int, np.integer))) or p < 1 or p > n for p in keep):
        raise ValueError(f"keep must be a subset of 1..{n}, got {keep}")
    # einsum subscripts: row letters then column letters; traced parties share a letter
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:n])
    cols = list(letters[n : 2 * n])
    for p in range(1, n + 1):
        if p not in keep:
            cols[p - 1] = rows[p - 1]
    out = "".join(rows[p - 1] for p in keep) + "".join(cols[p - 1] for p in keep)
    reduced = np.einsum("".join(rows) + "".join(cols) + "->" + out, rho.reshape(dims + dims))
    dk = int(np.prod([dims[p - 1] for p in keep])) if keep else 1
    return reduced.reshape(dk, dk)


def singular_values(m):
    """Singular values of a real matrix, largest first."""
    m = np.asarray(m, dtype=float)
    return np.linalg.svd(m, compute_uv=False)


def singular_values_complex(m):
    """Singular values of a complex matrix, largest first."""
    return np.linalg.svd(np.asarray(m, dtype=complex), compute_uv=False)


def hermitian_eigenvalues(m, tol=HERMITIAN_TOL):
    """Ascending eigenvalues of a Hermitian matrix.

    Raises ``ValueError`` when ``m`` deviates from Hermitian by more than
    ``tol`` in max-abs entry.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = hermiticity_deviation(m)
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e} > {tol:.1e})")
    return np.linalg.eigvalsh(m)


def hermiticity_deviation(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
