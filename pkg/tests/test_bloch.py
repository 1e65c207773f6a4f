import itertools

import numpy as np
import pytest

from gmecorr.bloch import (
    CorrelationData,
    abc_residual,
    closed_form_purities,
    correlation_tensors,
    purity_expansion,
    reconstruct,
    reconstruct_matrix,
    reduced_purities,
    unfold,
)
from gmecorr.gellmann import gellmann_basis
from gmecorr.linalg import partial_trace
from gmecorr.states import ghz, random_mixed, random_pure, w_state

from conftest import pauli


def brute_force_tensor(rho, d):
    """Every tr(rho L_a (x) L_b (x) L_c) by explicit Kronecker products."""
    L = [np.eye(d)] + list(gellmann_basis(d).generators)
    n = len(L)
    out = np.zeros((n, n, n))
    for a, b, c in itertools.product(range(n), repeat=3):
        out[a, b, c] = np.trace(rho @ np.kron(np.kron(L[a], L[b]), L[c])).real
    return out


def test_maximally_mixed_is_zero():
    for d in (2, 3):
        data = correlation_tensors(np.eye(d**3) / d**3)
        assert data.full[0, 0, 0] == pytest.approx(1)
        for name in ("T1", "T2", "T3", "T12", "T13", "T23", "T123"):
            assert np.max(np.abs(getattr(data, name))) < 1e-15


def test_ghz2_against_pauli_oracle():
    P = pauli()
    g = ghz(2).amplitudes
    rho = np.outer(g, g)
    data = correlation_tensors(rho)
    letters = "xyz"
    for (i, a), (j, b), (k, c) in itertools.product(enumerate(letters), repeat=3):
        expected = np.trace(rho @ np.kron(np.kron(P[a], P[b]), P[c])).real
        assert data.T123[i, j, k] == pytest.approx(expected, abs=1e-14)
    nonzero = {tuple(ix): data.T123[tuple(ix)] for ix in np.argwhere(np.abs(data.T123) > 1e-12)}
    assert nonzero == pytest.approx({(0, 0, 0): 1.0, (0, 1, 1): -1.0, (1, 0, 1): -1.0, (1, 1, 0): -1.0})
    assert np.linalg.norm(data.T123) == pytest.approx(2)
    assert data.T12[2, 2] == pytest.approx(1)
    assert np.allclose(data.T1, 0) and np.allclose(data.T2, 0) and np.allclose(data.T3, 0)


@pytest.mark.parametrize("d", [2, 3])
def test_matches_brute_force(d):
    rho = random_mixed(d, 3).matrix
    assert np.allclose(correlation_tensors(rho).full, brute_force_tensor(rho, d), atol=1e-13)


@pytest.mark.parametrize("d", [2, 3])
def test_reconstruction_round_trip(d):
    for s in range(5):
        rho = random_mixed(d, s)
        assert np.max(np.abs(reconstruct(correlation_tensors(rho)).matrix - rho.matrix)) < 1e-10
    g = ghz(3).projector()
    assert np.max(np.abs(reconstruct_matrix(correlation_tensors(g)) - g.matrix)) < 1e-10


def test_zero_tensors_reconstruct_to_identity():
    for d in (2, 3):
        n = d * d - 1
        data = CorrelationData.from_tensors(
            d, np.zeros(n), np.zeros(n), np.zeros(n), *[np.zeros((n, n))] * 3, np.zeros((n, n, n))
        )
        assert np.allclose(reconstruct(data).matrix, np.eye(d**3) / d**3)


def test_from_tensors_round_trip():
    data = correlation_tensors(random_mixed(2, 9))
    again = CorrelationData.from_tensors(
        2, data.T1, data.T2, data.T3, data.T12, data.T13, data.T23, data.T123
    )
    assert np.allclose(again.full, data.full, atol=1e-15)


def test_unfoldings():
    rng = np.random.default_rng(4)
    cube = rng.standard_normal((3, 3, 3))
    n = 3
    m1, m2, m3 = (unfold(cube, cut) for cut in ("1|23", "2|13", "3|12"))
    for i, j, k in itertools.product(range(n), repeat=3):
        assert m1[i, n * j + k] == cube[i, j, k]
        assert m2[j, n * i + k] == cube[i, j, k]
        assert m3[k, n * i + j] == cube[i, j, k]
    for m in (m1, m2, m3):
        assert m.shape == (3, 9)
        assert np.linalg.norm(m) == pytest.approx(np.linalg.norm(cube))
    assert not np.any(unfold(np.zeros((8, 8, 8)), "2|13"))
    with pytest.raises(ValueError):
        unfold(cube, "1|2")


def test_ghz2_unfolding_singular_values():
    m = unfold(correlation_tensors(ghz(2).projector()), "1|23")
    # oracle: eigenvalues of M M^T; rows x and y each hold two entries of modulus 1
    ev = np.sort(np.linalg.eigvalsh(m @ m.T))[::-1]
    assert np.allclose(ev, [2, 2, 0], atol=1e-12)
    assert np.allclose(np.sqrt(np.clip(ev, 0, None)), np.linalg.svd(m, compute_uv=False), atol=1e-12)


def test_reduced_purity_examples():
    for d in (2, 3):
        p = reduced_purities(np.eye(d**3) / d**3)
        assert np.allclose(p[:3], 1 / d) and np.allclose(p[3:], 1 / d**2)
    assert reduced_purities(ghz(2)).p1 == pytest.approx(0.5)
    assert reduced_purities(w_state()).p1 == pytest.approx(5 / 9)


@pytest.mark.parametrize("d", [2, 3])
def test_identities_on_random_states(d):
    for s in range(50):
        rho = random_mixed(d, s, rank=1 + s % 4)
        data = correlation_tensors(rho)
        m = rho.matrix
        assert abs(np.trace(m @ m).real - purity_expansion(data)) < 1e-10
        assert np.allclose(reduced_purities(rho), closed_form_purities(data), atol=1e-10)
        psi = random_pure(d, s)
        pdata = correlation_tensors(psi)
        p = reduced_purities(psi)
        assert abs(p.p1 - p.p23) < 1e-10 and abs(p.p2 - p.p13) < 1e-10 and abs(p.p3 - p.p12) < 1e-10
        assert abs(abc_residual(pdata)) < 1e-10
        assert abs(purity_expansion(pdata) - 1) < 1e-10


def test_abc_ghz2():
    data = correlation_tensors(ghz(2))
    assert data.A == pytest.approx(0, abs=1e-14)
    assert data.B == pytest.approx(3)
    assert data.B / 4 == pytest.approx(0 + 3 / 2 - 3 / 4)


def test_tensor_norm_bounds():
    for d in (2, 3):
        for s in range(20):
            data = correlation_tensors(random_pure(d, s))
            for t in (data.T1, data.T2, data.T3):
                assert np.linalg.norm(t) <= np.sqrt(2 * (d - 1) / d) + 1e-9
            for t in (data.T12, data.T13, data.T23):
                assert np.linalg.norm(t) <= 2 * np.sqrt((d * d - 1) / d**2) + 1e-9


def test_mixture_tensors_are_linear():
    a, b = random_mixed(3, 1), random_mixed(3, 2)
    mix = 0.3 * a.matrix + 0.7 * b.matrix
    ta, tb = correlation_tensors(a).full, correlation_tensors(b).full
    assert np.max(np.abs(correlation_tensors(mix).full - (0.3 * ta + 0.7 * tb))) < 1e-12


def test_basis_mismatch():
    with pytest.raises(ValueError):
        correlation_tensors(np.eye(8) / 8, gellmann_basis(3))
