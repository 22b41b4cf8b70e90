import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glpmoead.errors import DimensionError, DomainError, ParameterError
from glpmoead.scalarization import (
    Scalarizer,
    clamp_weights,
    direction_vector,
    h_weight,
    parse_exponent,
    scalarize_glp,
    scalarize_lp,
    scalarize_tch,
)


def naive_lp(f, w, z, p):
    return sum((wi * abs(fi - zi)) ** p for fi, wi, zi in zip(f, w, z)) ** (1.0 / p)


def test_lp_examples():
    assert scalarize_lp([1, 1], [0.5, 0.5], [0, 0], 1) == pytest.approx(1.0)
    assert scalarize_lp([3, 4], [1, 1], [0, 0], 2) == pytest.approx(5.0)
    assert scalarize_tch([1, 3], [0.5, 0.5], [0, 0]) == pytest.approx(1.5)


def test_h_at_centre_is_m():
    for m in (2, 3, 5):
        assert h_weight(np.full(m, 1.0 / m)) == pytest.approx(m)


def test_glp_is_lp_times_h():
    f, w, z = [0.3, 0.9, 0.2], [0.2, 0.3, 0.5], [0.0, 0.1, 0.0]
    h = (0.2 * 0.3 * 0.5) ** (-1 / 3)
    assert scalarize_glp(f, w, z, 2) == pytest.approx(naive_lp(f, w, z, 2) * h)
    assert scalarize_glp(f, w, z, math.inf) == pytest.approx(scalarize_tch(f, w, z) * h)


@given(
    st.integers(2, 5).flatmap(lambda m: st.tuples(
        st.lists(st.floats(0, 10), min_size=m, max_size=m),
        st.lists(st.floats(0.01, 1), min_size=m, max_size=m),
        st.lists(st.floats(-1, 1), min_size=m, max_size=m),
    )),
    st.sampled_from([1.0, 1.5, 2.0, 3.0, 7.5]),
)
@settings(max_examples=200, deadline=None)
def test_lp_matches_direct_formula(fwz, p):
    f, w, z = fwz
    assert scalarize_lp(f, w, z, p) == pytest.approx(naive_lp(f, w, z, p), rel=1e-10, abs=1e-12)


@given(st.floats(0.01, 100), st.integers(2, 4), st.integers(0, 2**31))
@settings(max_examples=100, deadline=None)
def test_positive_homogeneity(c, m, seed):
    rng = np.random.default_rng(seed)
    f, w = rng.random(m), clamp_weights(rng.random(m))
    z = np.zeros(m)
    for s in (Scalarizer("lp", 1), Scalarizer("lp", 2.5), Scalarizer("lp", math.inf), Scalarizer("glp", 3)):
        assert s(c * f, w, z) == pytest.approx(c * s(f, w, z), rel=1e-10)


def test_large_p_tends_to_tchebycheff(rng):
    f, w = rng.random((1000, 3)) * 10, clamp_weights(rng.random((1000, 3)))
    z = np.zeros(3)
    dev = np.abs(scalarize_lp(f, w, z, 2.0**14) - scalarize_tch(f, w, z)) / scalarize_tch(f, w, z)
    assert np.all(np.isfinite(dev)) and dev.max() <= 1e-3


def test_huge_p_stays_finite():
    assert math.isfinite(scalarize_lp([1e3, 2e3], [0.5, 0.5], [0, 0], 1e6))
    assert scalarize_lp([1e-300, 2e-300], [0.5, 0.5], [0, 0], 500) > 0


def test_clamp():
    w = clamp_weights([0.0, 1.0])
    assert w[0] == pytest.approx(1e-6 / (1 + 1e-6))
    assert w.sum() == pytest.approx(1.0)
    assert np.array_equal(clamp_weights([0.25, 0.75]), [0.25, 0.75])


def test_errors():
    with pytest.raises(ParameterError):
        scalarize_lp([1], [1], [0], 0.5)
    with pytest.raises(ParameterError):
        scalarize_lp([1], [1], [0], math.inf)
    with pytest.raises(DomainError):
        h_weight([0.0, 1.0])
    with pytest.raises(DomainError):
        direction_vector([0.0, 1.0])
    with pytest.raises(DimensionError):
        scalarize_tch([1, 2], [0.5, 0.5, 0.0], [0, 0])
    with pytest.raises(ParameterError):
        Scalarizer("xyz", 1)


@pytest.mark.parametrize("token,value", [("inf", math.inf), ("Infinity", math.inf), ("∞", math.inf),
                                         ("2", 2.0), (1, 1.0), ("1.5", 1.5)])
def test_parse_exponent(token, value):
    assert parse_exponent(token) == value


@pytest.mark.parametrize("token", ["abc", "0.5", "-1"])
def test_parse_exponent_rejects(token):
    with pytest.raises(ParameterError):
        parse_exponent(token)


def test_scalarizer_labels_and_scale():
    assert Scalarizer("glp", math.inf).label == "GLinf"
    assert Scalarizer("lp", 2).label == "L2"
    w = np.array([[0.5, 0.5], [0.2, 0.8]])
    assert np.array_equal(Scalarizer("lp", 1).scale(w), [1.0, 1.0])
    assert np.allclose(Scalarizer("glp", 1).scale(w), h_weight(w))
