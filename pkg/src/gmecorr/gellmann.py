"""Generalized Gell-Mann matrices: the generators of SU(d).

Ordering of the ``d**2 - 1`` generators:

1. symmetric ``E_jk + E_kj`` for ``j < k`` (lexicographic),
2. antisymmetric ``-i E_jk + i E_kj`` for ``j < k`` (lexicographic),
3. diagonal ``sqrt(2 / (l (l + 1))) * (sum_{m <= l} E_mm - l E_{l+1, l+1})``
   for ``l = 1 .. d - 1``.

Every generator is Hermitian, traceless and normalized so that
``tr(g_a g_b) = 2 delta_ab``.  Individual tensor entries depend on this
ordering, but Frobenius and Ky Fan norms of correlation tensors do not: a
reordering is an orthogonal change of basis on each tensor index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    """SU(d) generators stacked as an array of shape ``(d**2 - 1, d, d)``."""

    d: int
    generators: np.ndarray

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    @property
    def with_identity(self):
        """Identity followed by the generators, shape ``(d**2, d, d)``."""
        return _with_identity(self.d)

    def decompose(self, h):
        """Coefficients ``tr(h g_a)`` of a ``d x d`` matrix."""
        h = np.asarray(h)
        return np.einsum("aij,ji->a", self.generators, h)

    def compose(self, trace, coeffs):
        """Inverse of :meth:`decompose`: ``(trace/d) I + 1/2 sum_a c_a g_a``."""
        return trace / self.d * np.eye(self.d) + 0.5 * np.einsum("a,aij->ij", coeffs, self.generators)


def _symmetric(d, j, k):
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = m[k, j] = 1.0
    return m


def _antisymmetric(d, j, k):
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = -1j
    m[k, j] = 1j
    return m


def _diagonal(d, l):
    diag = np.zeros(d)
    diag[:l] = 1.0
    diag[l] = -l
    return np.sqrt(2.0 / (l * (l + 1))) * np.diag(diag).astype(complex)


@lru_cache(maxsize=None)
def gellmann_basis(d):
    """Return the :class:`GeneratorBasis` of SU(d) for ``d >= 2``.

    >>> b = gellmann_basis(2)
    >>> [g.real.tolist() for g in b[::2]]
    [[[0.0, 1.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, -1.0]]]
    """
    if int(d) != d or d < 2:
        raise ValueError(f"local dimension must be an integer >= 2, got {d}")
    d = int(d)
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    gens = (
        [_symmetric(d, j, k) for j, k in pairs]
        + [_antisymmetric(d, j, k) for j, k in pairs]
        + [_diagonal(d, l) for l in range(1, d)]
    )
    arr = np.array(gens)
    arr.setflags(write=False)
    return GeneratorBasis(d, arr)


@lru_cache(maxsize=None)
def _with_identity(d):
    arr = np.concatenate([np.eye(d, dtype=complex)[None], gellmann_basis(d).generators])
    arr.setflags(write=False)
    return arr
