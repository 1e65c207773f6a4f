import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmecorr.bloch import correlation_tensors, reduced_purities
from gmecorr.criteria import (
    GME,
    INCONCLUSIVE,
    NoSignChange,
    analyze,
    best_k,
    find_threshold,
    ky_fan,
    lemma_bounds,
    linear_entropies,
    m_k,
    pure_gme_concurrence,
    theorem1_margin,
    theorem1_margins,
    theorem1_threshold,
    theorem2_bound,
    theorem2_bound_corrected,
)
from gmecorr.states import (
    PureState,
    StateSpec,
    example3_state,
    ghz,
    ghz_w_mix,
    isotropic_mix,
    random_biseparable_pure,
    random_mixed,
    random_pure,
    sample_seed,
    w_state,
)

seeds = st.integers(0, 2**32 - 1)


def threshold_by_hand(d, k):
    # independent spelling: (1/3)(2 sqrt(8k(d-1)^2(d+1)/d^3) + sqrt(8(d-1)^2(d+1)/d^3))
    c = 8 * (d - 1) ** 2 * (d + 1) / d**3
    return (2 * math.sqrt(k * c) + math.sqrt(c)) / 3


def test_ky_fan_examples(rng):
    assert ky_fan(np.diag([3.0, 2.0, 1.0]), 2) == pytest.approx(5)
    m = rng.standard_normal((4, 7))
    assert ky_fan(m, 4) == pytest.approx(np.sum(np.linalg.svd(m, compute_uv=False)))
    with pytest.raises(ValueError):
        ky_fan(m, 5)
    with pytest.raises(ValueError):
        ky_fan(m, 0)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_ky_fan_frobenius_and_monotone(seed, rank):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((5, rank)) @ rng.standard_normal((rank, 9))
    s = np.linalg.svd(m, compute_uv=False)
    fro = np.linalg.norm(m)
    for k in range(1, 6):
        assert ky_fan(m, k) <= math.sqrt(k) * fro + 1e-10
    for k in range(1, 5):
        a, b = ky_fan(m, k), ky_fan(m, k + 1)
        assert a <= b + 1e-12
        if s[k] < 1e-12:
            assert b - a < 1e-10
        else:
            assert b > a


def test_m_k_values():
    for k in range(1, 9):
        assert m_k(np.eye(27) / 27, k) == pytest.approx(0, abs=1e-14)
    assert m_k(ghz(3), 8) == pytest.approx(6.74552, abs=1e-4)
    proj = m_k(ghz(3), 5)
    for x in np.linspace(0, 1, 6):
        assert abs(m_k(isotropic_mix(ghz(3), x), 5) - x * proj) < 1e-10
    with pytest.raises(ValueError):
        m_k(ghz(2), 4)


def test_theorem1_threshold_values():
    assert theorem1_threshold(3, 8) == pytest.approx(4.83138, abs=1e-4)
    assert theorem1_threshold(3, 4) == pytest.approx(3.62887, abs=1e-4)
    for d in (2, 3, 4):
        for k in range(1, d * d):
            assert theorem1_threshold(d, k) == pytest.approx(threshold_by_hand(d, k), rel=1e-14)
    # d=2, k=3: (2 sqrt 2 / 3)(2 sqrt 3 + 1)(1/2) sqrt(3/2) = (1/sqrt 3)(2 sqrt 3 + 1) = 2 + 1/sqrt 3
    assert theorem1_threshold(2, 3) == pytest.approx(2 + 1 / math.sqrt(3), rel=1e-14)
    with pytest.raises(ValueError):
        theorem1_threshold(2, 4)
    with pytest.raises(ValueError):
        theorem1_threshold(1, 1)


def test_lemma_bounds_values():
    assert lemma_bounds(2, 1) == pytest.approx((1, math.sqrt(3), math.sqrt(3)))
    assert lemma_bounds(2, 3)[2] == pytest.approx(3)
    assert lemma_bounds(3, 8)[2] == pytest.approx(math.sqrt(8 * 8 * 4 * 4 / 27))


def test_theorem1_margin_example1():
    for x in (0.0, 0.25, 0.5, 0.8, 1.0):
        assert theorem1_margin(isotropic_mix(ghz(3), x), 8) == pytest.approx(6.74552 * x - 4.83138, abs=1e-3)
    assert np.all(theorem1_margins(np.eye(27) / 27) < 0)


@pytest.mark.parametrize("d", [2, 3])
def test_theorem1_silent_on_product_states(d):
    for i in range(200):
        psi = random_biseparable_pure(d, "product", sample_seed(5, i))
        assert np.max(theorem1_margins(psi)) <= 0


def test_best_k():
    k, margin = best_k(ghz(3))
    assert k == 8 and margin == pytest.approx(6.74552 - 4.83138, abs=1e-4)
    k, margin = best_k(np.eye(27) / 27)
    assert k == 1 and margin == pytest.approx(-theorem1_threshold(3, 1))
    k, margin = best_k(example3_state())
    assert margin >= 4.044882 - 3.628874 - 1e-6
    assert k == 3  # the saturated k=4 line is not the best; k=3 fires earlier


def test_theorem2_bound_examples():
    for x in np.linspace(0, 1, 11):
        for y in np.linspace(0, 1 - x, 5):
            expected = max((math.sqrt(72 * x * x + 66 * y * y) - 6) / 12, 0)
            assert abs(theorem2_bound(ghz_w_mix(x, y)) - expected) < 1e-9
    assert theorem2_bound(ghz(2)) == pytest.approx(1 / math.sqrt(2) - 0.5, abs=1e-12)
    assert theorem2_bound(np.eye(8) / 8) == 0


def test_pure_gme_concurrence():
    assert pure_gme_concurrence(ghz(2)) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert pure_gme_concurrence(w_state()) == pytest.approx(2 / 3, abs=1e-12)
    for s in range(20):
        assert pure_gme_concurrence(random_biseparable_pure(3, "product", s)) < 1e-12
        psi = random_pure(3, s)
        p = reduced_purities(psi)
        assert np.allclose(linear_entropies(psi), [1 - p.p1, 1 - p.p2, 1 - p.p3], atol=1e-12)


def test_soundness_on_haar_states():
    for d in (2, 3):
        for i in range(200):
            psi = random_pure(d, sample_seed(8, d, i))
            assert theorem2_bound(psi) <= pure_gme_concurrence(psi) + 1e-9
            assert theorem2_bound_corrected(psi) <= pure_gme_concurrence(psi) + 1e-9


def test_uncorrected_bound_flags_a_product_state():
    # |0> (x) (|00> + |11>)/sqrt 2: zero GME concurrence, positive uncorrected bound
    amps = np.zeros(8)
    amps[[0, 3]] = 1 / math.sqrt(2)
    psi = PureState(2, amps)
    assert pure_gme_concurrence(psi) < 1e-12
    assert theorem2_bound(psi) == pytest.approx(math.sqrt(3) / (2 * math.sqrt(2)) - 0.5)
    assert theorem2_bound_corrected(psi) == 0


def test_corrected_bound_on_biseparable_states():
    for d in (2, 3):
        for cut in ("1|23", "2|13", "3|12"):
            for i in range(100):
                assert theorem2_bound_corrected(random_biseparable_pure(d, cut, sample_seed(3, i))) <= 1e-9
    assert theorem2_bound_corrected(ghz(2)) == pytest.approx(1 / math.sqrt(2) - math.sqrt(3 / 8))


@settings(max_examples=25, deadline=None)
@given(seeds, st.floats(0, 1))
def test_m_k_convexity(seed, p):
    a = random_mixed(3, seed, rank=2)
    b = random_pure(3, seed ^ 0xABCDEF).projector()
    mix = p * a.matrix + (1 - p) * b.matrix
    ma, mb, mm = theorem1_margins(a), theorem1_margins(b), theorem1_margins(mix)
    # thresholds cancel, so margins are convex exactly when M_k is
    assert np.all(mm <= p * ma + (1 - p) * mb + 1e-9)


def test_isotropic_margin_is_affine():
    xs = np.linspace(0, 1, 11)
    for k in (1, 4, 8):
        vals = np.array([theorem1_margin(isotropic_mix(example3_state(), x), k) for x in xs])
        coef = np.polyfit(xs, vals, 1)
        assert np.max(np.abs(np.polyval(coef, xs) - vals)) <= 1e-9


def test_analyze_report():
    rep = analyze(isotropic_mix(ghz(3), 0.8))
    assert rep.verdict == GME and rep.best_k == 8
    assert rep.record(8).margin == pytest.approx(6.74552 * 0.8 - 4.83138, abs=1e-3)
    rep = analyze(np.eye(8) / 8)
    assert rep.verdict == INCONCLUSIVE
    assert all(r.margin < 0 for r in rep.records) and rep.theorem2_bound == 0
    assert analyze(ghz(2)).pure_exact == pytest.approx(math.sqrt(0.5))
    assert [r.k for r in analyze(ghz(3), ks=[2, 5]).records] == [2, 5]


def test_find_threshold():
    ex1 = StateSpec("ghz-isotropic", 3, {}).along("x")
    assert find_threshold(ex1, "theorem1", 0, 1, k=8) == pytest.approx(0.716235, abs=1e-4)
    # closed form from |T123(GHZ_3)| * x / (2 sqrt 2) = 2/3
    t = np.linalg.norm(correlation_tensors(ghz(3)).T123)
    assert find_threshold(ex1, "theorem2", 0, 1) == pytest.approx(2 / 3 * 2 * math.sqrt(2) / t, abs=1e-7)
    ex3 = StateSpec("example3-isotropic", 3, {}).along("x")
    assert find_threshold(ex3, "theorem2", 0, 1) == pytest.approx(0.866025, abs=1e-4)
    ex2 = StateSpec("ghz-w-mix", 2, {"y": 0.0}).along("x")
    assert find_threshold(ex2, "theorem2", 0, 1) == pytest.approx(math.sqrt(2) / 2, abs=1e-7)
    with pytest.raises(NoSignChange):
        find_threshold(ex3, "theorem1", 0, 1, k=8)
