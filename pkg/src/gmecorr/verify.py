"""Sampled verification of the identities and inequalities behind the criteria.

Identity checks compare two exact-arithmetic-equal expressions and use a
1e-10 tolerance.  Inequality checks record ``max(lhs - rhs)`` over the
ensemble (negative values are slack) against a 1e-9 allowance.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .bloch import (
    abc_residual,
    closed_form_purities,
    correlation_tensors,
    purity_expansion,
    reconstruct_matrix,
    reduced_purities,
)
from .criteria import (
    lemma_bounds,
    pure_gme_concurrence,
    theorem1_margins,
    theorem2_bound,
    theorem2_bound_corrected,
    unfolding_spectra,
)
from .states import (
    BISEPARABLE_KINDS,
    CUTS,
    random_biseparable_pure,
    random_mixed,
    random_pure,
    sample_seed,
)

IDENTITY_TOL = 1e-10
INEQUALITY_TOL = 1e-9

# stream ids keep every ensemble independent of the others under one master seed
_STREAM = {"pure": 1, "mixed": 2, "1|23": 3, "2|13": 4, "3|12": 5, "product": 6}


@dataclass(frozen=True)
class CheckRecord:
    check: str
    d: int
    samples: int
    passes: int
    max_violation: float | None
    tolerance: float

    @property
    def passed(self):
        return self.max_violation is None or self.max_violation <= self.tolerance


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    trials: int
    dims: tuple
    seed: int
    checks: tuple
    version: str = __version__

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "suite": self.suite,
            "version": self.version,
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "passed": self.passed,
            "checks": [{**asdict(c), "passed": c.passed} for c in self.checks],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, obj):
        checks = tuple(
            CheckRecord(**{k: v for k, v in c.items() if k != "passed"}) for c in obj["checks"]
        )
        return cls(obj["suite"], obj["trials"], tuple(obj["dims"]), obj["seed"], checks, obj["version"])


def _pure(d, trials, seed):
    return [random_pure(d, sample_seed(seed, _STREAM["pure"], d, i)) for i in range(trials)]


def _mixed(d, trials, seed):
    return [random_mixed(d, sample_seed(seed, _STREAM["mixed"], d, i)) for i in range(trials)]


def _biseparable(d, kind, trials, seed):
    return [
        random_biseparable_pure(d, kind, sample_seed(seed, _STREAM[kind], d, i)) for i in range(trials)
    ]


def _record(name, d, tol, violations):
    v = np.asarray(violations, dtype=float)
    if v.size == 0:
        return CheckRecord(name, d, 0, 0, None, tol)
    return CheckRecord(name, d, int(v.size), int(np.sum(v <= tol)), float(v.max()), tol)


def check_reconstruction(trials, d, seed, tol=IDENTITY_TOL):
    """Round trip ``rho -> tensors -> rho`` on random mixed and pure states."""
    viol = []
    for state in _mixed(d, trials, seed) + [p.projector() for p in _pure(d, trials, seed)]:
        back = reconstruct_matrix(correlation_tensors(state))
        viol.append(np.max(np.abs(back - state.matrix)))
    return _record("reconstruction", d, tol, viol)


def check_purity_identity(trials, d, seed, tol=IDENTITY_TOL):
    """``tr rho^2`` against its expansion in tensor norms."""
    viol = []
    for state in _mixed(d, trials, seed) + [p.projector() for p in _pure(d, trials, seed)]:
        m = state.matrix
        direct = float(np.real(np.einsum("ij,ji->", m, m)))
        viol.append(abs(direct - purity_expansion(correlation_tensors(state))))
    return _record("purity_identity", d, tol, viol)


def check_closed_form_purities(trials, d, seed, tol=IDENTITY_TOL):
    """Partial-trace marginal purities against their tensor-norm closed forms."""
    viol = []
    for state in _mixed(d, trials, seed):
        a = np.array(reduced_purities(state))
        b = np.array(closed_form_purities(correlation_tensors(state)))
        viol.append(np.max(np.abs(a - b)))
    return _record("closed_form_purities", d, tol, viol)


def check_marginal_equalities(trials, d, seed, tol=IDENTITY_TOL):
    """``tr rho_i^2 = tr rho_jk^2`` for pure states."""
    viol = []
    for psi in _pure(d, trials, seed):
        p = reduced_purities(psi)
        viol.append(max(abs(p.p1 - p.p23), abs(p.p2 - p.p13), abs(p.p3 - p.p12)))
    return _record("marginal_equalities", d, tol, viol)


def check_abc_identity(trials, d, seed, tol=IDENTITY_TOL):
    """``B/4 = (1/2 - 1/d) A + 3/d - 3/d^2`` for pure states."""
    viol = [abs(abc_residual(correlation_tensors(psi))) for psi in _pure(d, trials, seed)]
    return _record("abc_identity", d, tol, viol)


def check_lemma_bounds(trials, d, seed, tol=INEQUALITY_TOL):
    """Ky Fan norms of unfoldings of biseparable pure states against the
    three pure-state bounds, for every k."""
    n = d * d - 1
    bounds = np.array([lemma_bounds(d, k) for k in range(1, n + 1)])  # (k, 3)
    viol = []
    for kind in BISEPARABLE_KINDS:
        for psi in _biseparable(d, kind, trials, seed):
            kyfan = np.cumsum(unfolding_spectra(psi), axis=1)  # (cut, k)
            worst = -np.inf
            for c, cut in enumerate(CUTS):
                if kind == "product":
                    b = bounds[:, 0]
                elif kind == cut:
                    b = bounds[:, 1]
                else:
                    b = bounds[:, 2]
                worst = max(worst, float(np.max(kyfan[c] - b)))
            viol.append(worst)
    return _record("lemma_bounds", d, tol, viol)


def check_theorem1_soundness(trials, d, seed, tol=INEQUALITY_TOL):
    """The Ky Fan criterion never fires on biseparable pure states (all k)."""
    viol = []
    for kind in BISEPARABLE_KINDS:
        viol += [float(np.max(theorem1_margins(psi))) for psi in _biseparable(d, kind, trials, seed)]
    return _record("theorem1_biseparable_soundness", d, tol, viol)


def check_theorem2_biseparable_soundness(trials, d, seed, tol=INEQUALITY_TOL):
    """The uncorrected concurrence bound on biseparable pure states.

    Known to fail: states that are a product across one cut but entangled
    across another get a positive bound.  Not part of :data:`CHECKS`.
    """
    viol = []
    for kind in BISEPARABLE_KINDS:
        viol += [theorem2_bound(psi) for psi in _biseparable(d, kind, trials, seed)]
    return _record("theorem2_biseparable_soundness", d, tol, viol)


def check_bound_soundness(trials, d, seed, tol=INEQUALITY_TOL):
    """Concurrence lower bound never exceeds the exact value on Haar-random pure states."""
    viol = [theorem2_bound(psi) - pure_gme_concurrence(psi) for psi in _pure(d, trials, seed)]
    return _record("bound_soundness", d, tol, viol)


def check_corrected_bound_soundness(trials, d, seed, tol=INEQUALITY_TOL):
    """Corrected bound against the exact value on Haar-random and biseparable pure states."""
    states = _pure(d, trials, seed)
    for kind in BISEPARABLE_KINDS:
        states += _biseparable(d, kind, trials, seed)
    viol = [theorem2_bound_corrected(psi) - pure_gme_concurrence(psi) for psi in states]
    return _record("corrected_bound_soundness", d, tol, viol)


CHECKS = (
    check_reconstruction,
    check_purity_identity,
    check_closed_form_purities,
    check_marginal_equalities,
    check_abc_identity,
    check_lemma_bounds,
    check_theorem1_soundness,
    check_bound_soundness,
    check_corrected_bound_soundness,
)

KNOWN_FAILURES = (check_theorem2_biseparable_soundness,)


def run_suite(dims=(2, 3), trials=500, seed=42, tolerance=None, checks=CHECKS):
    """Run ``checks`` for each local dimension.

    ``tolerance`` overrides every per-check tolerance (used to exercise the
    failure path).
    """
    dims = tuple(sorted(set(int(d) for d in dims)))
    records = []
    for d in dims:
        for check in checks:
            kwargs = {} if tolerance is None else {"tol": tolerance}
            records.append(check(trials, d, seed, **kwargs))
    return VerificationReport("gme-identities", int(trials), dims, int(seed), tuple(records))
