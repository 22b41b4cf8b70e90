import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from glpmoead.core import (
    Population,
    ReferencePoint,
    dominates,
    nondominated_filter,
    nondominated_mask,
    update_ideal,
)
from glpmoead.errors import DimensionError, ParameterError

fronts = st.integers(1, 4).flatmap(
    lambda m: arrays(np.float64, st.tuples(st.integers(1, 25), st.just(m)),
                     elements=st.integers(0, 5).map(float))
)


def test_dominance_examples():
    assert dominates([1, 2], [2, 2])
    assert not dominates([1, 3], [2, 2])
    assert not dominates([1, 2], [1, 2])


def test_dominance_length_mismatch():
    with pytest.raises(DimensionError):
        dominates([1, 2], [1, 2, 3])


@given(fronts)
@settings(max_examples=200, deadline=None)
def test_filter_against_pairwise_oracle(P):
    out = nondominated_filter(P)
    keep = [p for i, p in enumerate(P) if not any(dominates(q, p) for q in P)]
    unique = []
    for p in keep:
        if not any(np.array_equal(p, u) for u in unique):
            unique.append(p)
    assert np.array_equal(out, np.array(unique).reshape(-1, P.shape[1]))


@given(fronts)
@settings(max_examples=100, deadline=None)
def test_filter_output_is_mutually_nondominated(P):
    out = nondominated_filter(P)
    for i in range(len(out)):
        for j in range(len(out)):
            assert not dominates(out[i], out[j])


def test_filter_collapses_duplicates_and_keeps_order():
    P = np.array([[2.0, 1.0], [1.0, 2.0], [2.0, 1.0], [3.0, 3.0]])
    assert np.array_equal(nondominated_filter(P), [[2.0, 1.0], [1.0, 2.0]])
    assert nondominated_mask(P).tolist() == [True, True, True, False]


def test_filter_empty():
    assert nondominated_filter(np.empty((0, 3))).shape == (0, 3)


def test_reference_point_modes():
    z = update_ideal(ReferencePoint.empty(2), [3.0, 1.0])
    z = update_ideal(z, [2.0, 4.0])
    assert np.array_equal(z.values, [2.0, 1.0])
    u = ReferencePoint([2.0, 1.0], "utopian", 0.5)
    assert np.array_equal(u.values, [1.5, 0.5])
    with pytest.raises(ParameterError):
        ReferencePoint([0.0], "utopian", 0.0)
    with pytest.raises(DimensionError):
        update_ideal(z, [1.0, 2.0, 3.0])


def test_population_rows():
    pop = Population(np.zeros((3, 4)), np.arange(6.0).reshape(3, 2))
    assert len(pop) == 3
    assert np.array_equal(pop[1].f, [2.0, 3.0])
    clone = pop.copy()
    clone.F[0, 0] = 99
    assert pop.F[0, 0] == 0
    with pytest.raises(DimensionError):
        Population(np.zeros((2, 1)), np.zeros((3, 2)))
