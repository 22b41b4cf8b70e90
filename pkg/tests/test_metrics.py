import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import exact_rank_sum_pvalue, hv_inclusion_exclusion, hv_monte_carlo

from glpmoead.core import nondominated_filter
from glpmoead.errors import ConfigurationError, GlpMoeadError
from glpmoead.metrics import (
    BETTER,
    SIMILAR,
    WORSE,
    hypervolume,
    max_consecutive_gap,
    normalize,
    normalized_hypervolume,
    pooled_pf_bounds,
    wilcoxon_rank_sum,
)


def test_normalize_examples():
    assert np.allclose(normalize([1, 1], [0, 0], [2, 2]), [0.5, 0.5])
    assert np.allclose(normalize([0, 0], [0, 0], [2, 2]), [0, 0])
    with pytest.raises(ConfigurationError):
        normalize([1, 1], [0, 1], [2, 1])


def test_hv_examples():
    assert hypervolume([[1, 0], [0, 1]], [2, 2]) == pytest.approx(3.0)
    assert hypervolume([[0, 0]]) == pytest.approx(1.21)
    assert hypervolume([[1.2, 0.5]]) == 0.0
    assert hypervolume(np.empty((0, 2))) == 0.0
    assert hypervolume([[1.1, 0.0]]) == 0.0


@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 9))
@settings(max_examples=150, deadline=None)
def test_hv_matches_inclusion_exclusion(seed, m, k):
    rng = np.random.default_rng(seed)
    P = rng.random((k, m)) * 1.2
    ref = np.full(m, 1.1)
    assert hypervolume(P, ref) == pytest.approx(hv_inclusion_exclusion(P, ref), abs=1e-9)


def test_hv_monte_carlo_m5(rng):
    P = rng.random((15, 5))
    P = P / P.sum(axis=1, keepdims=True)
    ref = np.full(5, 1.1)
    est, se = hv_monte_carlo(P, ref, 1_000_000, rng)
    assert abs(hypervolume(P, ref) - est) <= 4 * se


@given(st.integers(0, 2**32 - 1), st.integers(2, 3))
@settings(max_examples=60, deadline=None)
def test_hv_monotone(seed, m):
    rng = np.random.default_rng(seed)
    P = rng.random((8, m))
    base = hypervolume(P)
    q = rng.random(m)
    assert hypervolume(np.vstack([P, q])) >= base - 1e-12
    dominated = P[0] + rng.random(m) * 0.01
    assert hypervolume(np.vstack([P, dominated])) == pytest.approx(base, abs=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_normalization_invariance(seed):
    rng = np.random.default_rng(seed)
    P = rng.random((10, 3))
    scale, shift = rng.uniform(0.5, 5, 3), rng.uniform(-3, 3, 3)
    lo, hi = np.zeros(3), np.ones(3)
    a = normalized_hypervolume(P, lo, hi)
    b = normalized_hypervolume(P * scale + shift, lo * scale + shift, hi * scale + shift)
    assert a == pytest.approx(b, abs=1e-12)


def test_pooled_bounds(rng):
    A = np.array([[0.0, 2.0], [1.0, 1.0]])
    assert [b.tolist() for b in pooled_pf_bounds([A])] == [[0, 1], [1, 2]]
    B = np.array([[2.0, 0.5], [3.0, 0.0]])
    assert [b.tolist() for b in pooled_pf_bounds([A, B])] == [[0, 0], [3, 2]]
    for _ in range(20):
        fronts = [rng.random((12, 3)) for _ in range(3)]
        nd = nondominated_filter(np.vstack(fronts))
        lo, hi = pooled_pf_bounds(fronts + [nd + 0.5])
        assert np.array_equal(lo, nd.min(axis=0)) and np.array_equal(hi, nd.max(axis=0))
    with pytest.raises(GlpMoeadError):
        pooled_pf_bounds([])


def test_max_consecutive_gap():
    F = np.array([[0.0, 1.0], [0.6, 0.4], [1.0, 0.0], [0.7, 0.9]])
    assert max_consecutive_gap(F) == pytest.approx(np.hypot(0.6, 0.6))
    assert max_consecutive_gap(F[:1]) == 0.0


def test_rank_sum_examples():
    a = np.arange(1.0, 31.0)
    assert wilcoxon_rank_sum(a, a) == SIMILAR
    assert wilcoxon_rank_sum(a, a + 100) == WORSE
    assert wilcoxon_rank_sum(a + 100, a) == BETTER
    assert wilcoxon_rank_sum(a + 100, a, maximize=False) == WORSE
    assert wilcoxon_rank_sum(np.zeros(5), np.zeros(5)) == SIMILAR
    with pytest.raises(ConfigurationError):
        wilcoxon_rank_sum([1, 2, 3], [4, 5, 6])


def test_rank_sum_u2_case():
    # U = 2: a beats b in only two of the 25 pairs
    a = np.array([1.0, 2.0, 3.0, 4.0, 7.0])
    b = np.array([5.0, 6.0, 8.0, 9.0, 10.0])
    u = sum(x > y for x in a for y in b)
    assert u == 2
    assert exact_rank_sum_pvalue(a, b) == pytest.approx(8 / 252)
    assert wilcoxon_rank_sum(a, b) == WORSE


def test_rank_sum_u4_not_significant():
    a = np.array([1.0, 2.0, 3.0, 6.0, 7.0])
    b = np.array([4.0, 5.0, 8.0, 9.0, 10.0])
    assert exact_rank_sum_pvalue(a, b) > 0.05
    assert wilcoxon_rank_sum(a, b) == SIMILAR
