"""Tripartite pure states and density matrices on ``C^d (x) C^d (x) C^d``.

Kets are indexed ``|abc> -> a*d**2 + b*d + c`` (party 1 is the most
significant digit), matching the Kronecker-factor order used everywhere
else in the package.

Random constructors are pure functions of ``(parameters, seed)``.  Ensembles
derive per-sample seeds with :func:`sample_seed`, which feeds the master seed
and the sample index to :class:`numpy.random.SeedSequence` as
``SeedSequence(seed, spawn_key=index)``.  Sample ``i`` is therefore the
same no matter how many samples are drawn or in what order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .linalg import hermiticity_deviation

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIGEN_TOL = -1e-9

CUTS = ("1|23", "2|13", "3|12")
BISEPARABLE_KINDS = CUTS + ("product",)


class InvalidStateError(ValueError):
    """Raised when a matrix or vector fails a physicality invariant."""


def _local_dim(n, power):
    d = round(n ** (1.0 / power))
    if d**power != n:
        raise InvalidStateError(f"size {n} is not a perfect {power}-th power")
    return d


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized tripartite ket with ``d**3`` amplitudes."""

    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.d**3:
            raise InvalidStateError(f"expected {self.d ** 3} amplitudes for d={self.d}, got {amps.size}")
        norm_dev = abs(np.linalg.norm(amps) - 1.0)
        if norm_dev > NORM_TOL:
            raise InvalidStateError(f"unit norm violated by {norm_dev:.3e}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def tensor(self):
        """Amplitudes reshaped to ``(d, d, d)``."""
        return self.amplitudes.reshape(self.d, self.d, self.d)

    def projector(self):
        return DensityMatrix(self.d, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    failures: tuple = ()

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed


def validate(rho):
    """Check Hermiticity, unit trace and positivity of ``rho``.

    Accepts a :class:`DensityMatrix` or any square array.  Never raises for
    a square input; the report lists the invariants that failed.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {m.shape}")
    herm = hermiticity_deviation(m)
    tr_dev = abs(np.trace(m) - 1.0)
    # positivity is judged on the Hermitian part so a tiny skew part does not mask it
    min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    failures = []
    if herm > HERMITIAN_TOL:
        failures.append(f"hermiticity (deviation {herm:.3e} > {HERMITIAN_TOL:.0e})")
    if tr_dev > TRACE_TOL:
        failures.append(f"unit trace (deviation {tr_dev:.3e} > {TRACE_TOL:.0e})")
    if min_eig < EIGEN_TOL:
        failures.append(f"positivity (min eigenvalue {min_eig:.3e} < {EIGEN_TOL:.0e})")
    return ValidationReport(herm, float(tr_dev), min_eig, tuple(failures))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated tripartite density matrix of dimension ``d**3``.

    Construction raises :class:`InvalidStateError` naming the violated
    invariant.
    """

    d: int
    matrix: np.ndarray
    report: ValidationReport = field(init=False, repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = self.d**3
        if m.shape != (n, n):
            raise InvalidStateError(f"expected a {n}x{n} matrix for d={self.d}, got shape {m.shape}")
        rep = validate(m)
        if not rep.passed:
            raise InvalidStateError("; ".join(rep.failures))
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "report", rep)

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m)
        return cls(_local_dim(m.shape[0], 3), m)

    @property
    def dims(self):
        return (self.d, self.d, self.d)


def basis_ket(d, *digits):
    psi = np.zeros(d**3, dtype=complex)
    a, b, c = digits
    psi[a * d * d + b * d + c] = 1.0
    return psi


def _superposition(d, kets):
    psi = sum(basis_ket(d, *k) for k in kets)
    return PureState(d, psi / np.sqrt(len(kets)))


def ghz(d):
    """``(|000> + |111> + ... + |d-1 d-1 d-1>) / sqrt(d)``."""
    if int(d) != d or d < 2:
        raise ValueError(f"local dimension must be an integer >= 2, got {d}")
    d = int(d)
    return _superposition(d, [(i, i, i) for i in range(d)])


def w_state():
    """Three-qubit W state ``(|001> + |010> + |100>) / sqrt(3)``."""
    return _superposition(2, [(0, 0, 1), (0, 1, 0), (1, 0, 0)])


def example3_state():
    """Three-qutrit state ``(|012> + |021> + |111>) / sqrt(3)``."""
    return _superposition(3, [(0, 1, 2), (0, 2, 1), (1, 1, 1)])


def _isotropic_matrix(psi, x):
    n = psi.d**3
    return (1.0 - x) / n * np.eye(n) + x * np.outer(psi.amplitudes, psi.amplitudes.conj())


def _ghz_w_matrix(x, y):
    g = ghz(2).amplitudes
    w = w_state().amplitudes
    return (1.0 - x - y) / 8 * np.eye(8) + x * np.outer(g, g.conj()) + y * np.outer(w, w.conj())


def isotropic_mix(psi, x):
    """``(1 - x) I / d**3 + x |psi><psi|``, validated."""
    return DensityMatrix(psi.d, _isotropic_matrix(psi, x))


def ghz_w_mix(x, y):
    """``(1 - x - y) I / 8 + x |GHZ><GHZ| + y |W><W|`` on three qubits."""
    return DensityMatrix(2, _ghz_w_matrix(x, y))


def sample_seed(seed, *index):
    """Seed of sample ``index`` in an ensemble drawn from master ``seed``.

    ``index`` may be several integers (e.g. ensemble id, then sample number).
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(i) for i in index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _haar_vector(rng, n):
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)


def random_pure(d, seed):
    """Haar-random tripartite pure state (normalized complex Gaussian vector)."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    rng = np.random.default_rng(seed)
    return PureState(d, _haar_vector(rng, d**3))


def random_biseparable_pure(d, cut, seed):
    """Product of independent Haar-random factors across ``cut``.

    ``cut`` is one of ``"1|23"``, ``"2|13"``, ``"3|12"`` or ``"product"``
    (three independent single-party factors).
    """
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    rng = np.random.default_rng(seed)
    if cut == "product":
        a, b, c = (_haar_vector(rng, d) for _ in range(3))
        psi = np.einsum("a,b,c->abc", a, b, c)
    elif cut in CUTS:
        single = _haar_vector(rng, d)
        pair = _haar_vector(rng, d * d).reshape(d, d)
        spec = {"1|23": "a,bc->abc", "2|13": "b,ac->abc", "3|12": "c,ab->abc"}[cut]
        psi = np.einsum(spec, single, pair)
    else:
        raise ValueError(f"unknown cut {cut!r}; expected one of {BISEPARABLE_KINDS}")
    psi = psi.reshape(-1)
    return PureState(d, psi / np.linalg.norm(psi))


def random_mixed(d, seed, rank=None):
    """Random density matrix ``G G^dag / tr(G G^dag)`` from a Ginibre ``G``.

    ``rank`` defaults to full rank ``d**3``.
    """
    n = d**3
    rank = n if rank is None else rank
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    m = g @ g.conj().T
    return DensityMatrix(d, m / np.trace(m).real)


# ---------------------------------------------------------------- state specs

FAMILIES = {
    "ghz-isotropic": (("x",), None),
    "ghz-w-mix": (("x", "y"), 2),
    "example3-isotropic": (("x",), 3),
    "explicit": ((), None),
}


@dataclass(frozen=True, eq=False)
class StateSpec:
    """Declarative state description: a named family with parameters, or an
    explicit matrix (``family="explicit"``)."""

    family: str
    d: int
    params: Mapping[str, float] = field(default_factory=dict)
    matrix: np.ndarray | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidStateError(f"unknown family {self.family!r}; expected one of {sorted(FAMILIES)}")
        names, fixed_d = FAMILIES[self.family]
        if fixed_d is not None and self.d != fixed_d:
            raise InvalidStateError(f"family {self.family!r} requires d={fixed_d}, got d={self.d}")
        if self.family == "explicit" and self.matrix is None:
            raise InvalidStateError("explicit family requires a matrix")
        unknown = set(self.params) - set(names)
        if unknown:
            raise InvalidStateError(f"unknown parameters {sorted(unknown)} for family {self.family!r}")

    @property
    def parameter_names(self):
        return FAMILIES[self.family][0]

    def resolve(self, **overrides):
        """Build the validated :class:`DensityMatrix`; ``overrides`` replace
        parameter values."""
        return DensityMatrix(self.d, self.raw(**overrides))

    def raw(self, **overrides):
        """The family matrix as a bare array, without physicality checks."""
        p = {**self.params, **overrides}
        missing = [n for n in self.parameter_names if n not in p]
        if missing:
            raise InvalidStateError(f"missing parameters {missing} for family {self.family!r}")
        if self.family == "ghz-isotropic":
            return _isotropic_matrix(ghz(self.d), p["x"])
        if self.family == "ghz-w-mix":
            return _ghz_w_matrix(p["x"], p["y"])
        if self.family == "example3-isotropic":
            return _isotropic_matrix(example3_state(), p["x"])
        return np.asarray(self.matrix, dtype=complex)

    def along(self, name) -> Callable[[float], DensityMatrix]:
        """One-parameter slice ``t -> resolve(name=t)``."""
        if name not in self.parameter_names:
            raise InvalidStateError(f"family {self.family!r} has no parameter {name!r}")
        return lambda t: self.resolve(**{name: t})
