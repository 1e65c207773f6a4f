"""Correlation tensors of tripartite states in the Gell-Mann basis.

A state on ``(C^d)^{(x)3}`` expands as::

    rho = I/d^3 + 1/(2d^2) sum t1_i  g_i (x) I (x) I  + ...   (single-party)
                + 1/(4d)   sum t12_ij g_i (x) g_j (x) I + ... (two-party)
                + 1/8      sum t123_ijk g_i (x) g_j (x) g_k   (three-party)

with every coefficient the expectation value of the matching operator,
e.g. ``t12_ij = tr(rho g_i (x) g_j (x) I)``.  Internally all seven tensors
are blocks of one ``(d^2, d^2, d^2)`` array whose index 0 stands for the
identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .gellmann import GeneratorBasis, gellmann_basis
from .linalg import partial_trace
from .states import CUTS, DensityMatrix, PureState

IMAG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CorrelationData:
    """The seven correlation tensors of one tripartite state."""

    d: int
    full: np.ndarray

    @property
    def T1(self):
        return self.full[1:, 0, 0]

    @property
    def T2(self):
        return self.full[0, 1:, 0]

    @property
    def T3(self):
        return self.full[0, 0, 1:]

    @property
    def T12(self):
        return self.full[1:, 1:, 0]

    @property
    def T13(self):
        return self.full[1:, 0, 1:]

    @property
    def T23(self):
        return self.full[0, 1:, 1:]

    @property
    def T123(self):
        return self.full[1:, 1:, 1:]

    @property
    def A(self):
        """``|T1|^2 + |T2|^2 + |T3|^2``."""
        return float(sum(np.sum(t**2) for t in (self.T1, self.T2, self.T3)))

    @property
    def B(self):
        """``|T12|^2 + |T13|^2 + |T23|^2``."""
        return float(sum(np.sum(t**2) for t in (self.T12, self.T13, self.T23)))

    @property
    def C(self):
        """``|T123|^2``."""
        return float(np.sum(self.T123**2))

    @classmethod
    def from_tensors(cls, d, T1, T2, T3, T12, T13, T23, T123):
        n = d * d
        full = np.zeros((n, n, n))
        full[0, 0, 0] = 1.0
        full[1:, 0, 0], full[0, 1:, 0], full[0, 0, 1:] = T1, T2, T3
        full[1:, 1:, 0], full[1:, 0, 1:], full[0, 1:, 1:] = T12, T13, T23
        full[1:, 1:, 1:] = T123
        return cls(d, full)

    def norms(self):
        """Frobenius norms of all seven tensors, keyed by name."""
        names = ("T1", "T2", "T3", "T12", "T13", "T23", "T123")
        return {n: float(np.linalg.norm(getattr(self, n))) for n in names}


def _basis_for(d, basis):
    basis = gellmann_basis(d) if basis is None else basis
    if basis.d != d:
        raise ValueError(f"basis is for d={basis.d}, state has d={d}")
    return basis


def _as_matrix(rho):
    if isinstance(rho, PureState):
        return rho.d, np.outer(rho.amplitudes, rho.amplitudes.conj())
    if isinstance(rho, DensityMatrix):
        return rho.d, rho.matrix
    m = np.asarray(rho, dtype=complex)
    d = round(m.shape[0] ** (1 / 3))
    if m.shape != (d**3, d**3):
        raise ValueError(f"cannot read a tripartite qudit matrix from shape {m.shape}")
    return d, m


def correlation_tensors(rho, basis: GeneratorBasis | None = None) -> CorrelationData:
    """Compute every ``tr(rho L_a (x) L_b (x) L_c)`` with ``L_0 = I``.

    ``rho`` may be a :class:`DensityMatrix`, a :class:`PureState`, or a bare
    ``d^3 x d^3`` array (used when sweeping through unphysical parameter
    points).
    """
    d, m = _as_matrix(rho)
    L = _basis_for(d, basis).with_identity
    herm = (m + m.conj().T) / 2
    r = herm.reshape((d,) * 6)  # (a, b, c, x, y, z): row abc, column xyz
    # tr(rho A(x)B(x)C) = sum r[abc,xyz] A[x,a] B[y,b] C[z,c]
    x1 = np.tensordot(L, r, axes=([2, 1], [0, 3]))  # (i, b, c, y, z)
    x2 = np.tensordot(L, x1, axes=([2, 1], [1, 3]))  # (j, i, c, z)
    x3 = np.tensordot(L, x2, axes=([2, 1], [2, 3]))  # (k, j, i)
    full = x3.transpose(2, 1, 0)
    resid = float(np.max(np.abs(full.imag)))
    if resid > IMAG_TOL:
        raise ValueError(f"correlation tensor has imaginary residue {resid:.3e}")
    return CorrelationData(d, np.ascontiguousarray(full.real))


def _expansion_weights(d):
    w = np.full(d * d, 0.5)
    w[0] = 1.0 / d
    return w


def reconstruct_matrix(data, basis=None):
    """Assemble the Bloch expansion back into a ``d^3 x d^3`` array."""
    d = data.d
    L = _basis_for(d, basis).with_identity
    w = _expansion_weights(d)
    coeff = data.full * np.einsum("i,j,k->ijk", w, w, w)
    m = np.einsum("ijk,iax,jby,kcz->abcxyz", coeff, L, L, L, optimize=True)
    return m.reshape(d**3, d**3)


def reconstruct(data, basis=None) -> DensityMatrix:
    """Inverse of :func:`correlation_tensors`, validated as a density matrix."""
    return DensityMatrix(data.d, reconstruct_matrix(data, basis))


_UNFOLD_AXES = {"1|23": (0, 1, 2), "2|13": (1, 0, 2), "3|12": (2, 0, 1)}


def unfold(data, cut):
    """Matricize ``T123`` with the singled-out party as rows.

    For ``cut="1|23"`` the entry ``t_ijk`` lands at row ``i``, column
    ``n*j + k`` (0-based, ``n = d^2 - 1``); the remaining parties keep
    ascending order for the other cuts.
    """
    try:
        axes = _UNFOLD_AXES[cut]
    except KeyError:
        raise ValueError(f"unknown cut {cut!r}; expected one of {CUTS}") from None
    t = data.T123 if isinstance(data, CorrelationData) else np.asarray(data)
    n = t.shape[0]
    return t.transpose(axes).reshape(n, n * n)


class Purities(NamedTuple):
    p1: float
    p2: float
    p3: float
    p23: float
    p13: float
    p12: float


def reduced_purities(rho) -> Purities:
    """Marginal purities ``tr rho_S^2`` computed by partial trace."""
    d, m = _as_matrix(rho)
    dims = (d, d, d)
    keeps = ((1,), (2,), (3,), (2, 3), (1, 3), (1, 2))
    vals = []
    for keep in keeps:
        r = partial_trace(m, dims, keep)
        vals.append(float(np.real(np.einsum("ij,ji->", r, r))))
    return Purities(*vals)


def closed_form_purities(data) -> Purities:
    """Marginal purities from tensor norms alone."""
    d = data.d
    n1, n2, n3 = (float(np.sum(t**2)) for t in (data.T1, data.T2, data.T3))
    n12, n13, n23 = (float(np.sum(t**2)) for t in (data.T12, data.T13, data.T23))
    single = [1 / d + 0.5 * n for n in (n1, n2, n3)]
    pair = [
        1 / d**2 + (a + b) / (2 * d) + 0.25 * c
        for a, b, c in ((n2, n3, n23), (n1, n3, n13), (n1, n2, n12))
    ]
    return Purities(*single, *pair)


def purity_expansion(data):
    """``tr rho^2`` expressed through ``A``, ``B``, ``C``."""
    d = data.d
    return 1 / d**3 + data.A / (2 * d**2) + data.B / (4 * d) + data.C / 8


def abc_residual(data):
    """Pure-state identity ``B/4 = (1/2 - 1/d) A + 3/d - 3/d^2``; returns LHS - RHS.

    Vanishes for every pure state.
    """
    d = data.d
    return data.B / 4 - ((0.5 - 1 / d) * data.A + 3 / d - 3 / d**2)
