import math

import numpy as np
import pytest

from glpmoead.algorithm import (
    RunConfig,
    Variant,
    default_neighborhood_sizes,
    initialize,
    match_subproblem,
    replace_in_neighborhood,
    run,
    step,
)
from glpmoead.core import Population
from glpmoead.decomposition import decompose, simplex_lattice_weights
from glpmoead.errors import ConfigurationError, NumericError
from glpmoead.problems import make_problem
from glpmoead.scalarization import Scalarizer


def three_weights():
    return decompose(np.array([[0.25, 0.75], [0.5, 0.5], [0.75, 0.25]]), 2, 1)


def test_match_examples():
    assert match_subproblem(np.array([0.5, 0.5]), three_weights(), Scalarizer("lp", math.inf), np.zeros(2)) == 1
    dec = decompose(np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]), 2, 1)
    assert match_subproblem(np.array([1.0, 3.0]), dec, Scalarizer("lp", 1), np.zeros(2)) == 0


@pytest.mark.parametrize("p", [1, 2, 3, math.inf])
def test_glp_matches_direction_vectors(p):
    dec = decompose(simplex_lattice_weights(2, 12), 2, 1)
    s = Scalarizer("glp", p)
    for j in dec.interior:
        assert match_subproblem(0.3 * dec.lambdas[j], dec, s, np.zeros(2)) == j


def test_match_non_finite():
    with pytest.raises(NumericError):
        match_subproblem(np.array([np.nan, 1.0]), three_weights(), Scalarizer("lp", 1), np.zeros(2))


def test_far_match_redirects_replacement():
    # a child bred at subproblem 1 that lands on the direction of subproblem 7
    dec = decompose(simplex_lattice_weights(2, 9), 4, 2)
    s = Scalarizer("lp", math.inf)
    f_new = 0.1 * dec.lambdas[7] / np.linalg.norm(dec.lambdas[7])
    k = match_subproblem(f_new, dec, s, np.zeros(2))
    assert k == 7
    pop = Population(np.zeros((10, 1)), np.ones((10, 2)))
    count = replace_in_neighborhood(np.array([5.0]), f_new, dec.replacement[k], pop, dec, s, np.zeros(2))
    assert count == 2
    assert set(np.flatnonzero(pop.X[:, 0] == 5.0)) == set(dec.replacement[7].tolist())
    assert 1 not in dec.replacement[7]


def test_replacement_counts_and_strictness():
    dec = three_weights()
    s = Scalarizer("lp", 1)
    z = np.zeros(2)
    nb = np.array([0, 1, 2])
    pop = Population(np.zeros((3, 1)), np.ones((3, 2)))
    assert replace_in_neighborhood(np.array([1.0]), np.array([0.5, 0.5]), nb, pop, dec, s, z) == 3
    pop = Population(np.zeros((3, 1)), np.ones((3, 2)))
    assert replace_in_neighborhood(np.array([1.0]), np.array([1.0, 1.0]), nb, pop, dec, s, z) == 0
    # (0.5, 1.5) ties subproblem 1 (value 1) and improves only subproblem 2
    pop = Population(np.zeros((3, 1)), np.ones((3, 2)))
    assert replace_in_neighborhood(np.array([1.0]), np.array([0.5, 1.5]), nb, pop, dec, s, z) == 1
    assert pop.X[:, 0].tolist() == [0.0, 0.0, 1.0]


def test_generation_evaluation_count():
    state = initialize(RunConfig(make_problem("ZDT1"), Variant.named("moead"), N=5, max_evaluations=100, T_m=2, T_r=1))
    assert state.evaluations == 5
    step(state)
    assert state.evaluations == 10


def test_budget_truncation():
    state = initialize(RunConfig(make_problem("ZDT1"), Variant.named("gr"), N=10, max_evaluations=25, T_m=3))
    while not state.exhausted:
        step(state)
    assert state.evaluations == 25 and state.truncated


class Logged:
    """Wraps a problem and records every evaluated point."""

    def __init__(self, problem):
        self.inner = problem
        self.log = []
        for k in ("name", "encoding", "m", "n", "lower", "upper"):
            setattr(self, k, getattr(problem, k))

    def evaluate(self, x):
        f = self.inner.evaluate(x)
        self.log.append(f)
        return f

    def repair(self, x):
        return x

    def random_solution(self, rng):
        return self.inner.random_solution(rng)

    def pf_bounds(self):
        return self.inner.pf_bounds()


def test_full_replacement_keeps_population_minima():
    N = 6
    problem = Logged(make_problem("ZDT1"))
    config = RunConfig(problem, Variant.named("moead", 1), N=N, max_evaluations=2 * N, T_m=3, T_r=N)
    state = initialize(config)
    initial = state.population.F.copy()
    step(state)
    children = np.array(problem.log[N:])
    W = state.decomposition.weights_eff
    # weighted sums: the reference point only shifts every value of a subproblem equally
    for k in range(N):
        best = min(W[k] @ initial[k], (children @ W[k]).min())
        assert W[k] @ state.population.F[k] == pytest.approx(best)


def test_replaced_values_improve():
    state = initialize(RunConfig(make_problem("ZDT2"), Variant.named("gr", 2), N=20, max_evaluations=400, T_m=4))
    s, dec = state.variant.scalarizer, state.decomposition
    for _ in range(10):
        before = state.population.F.copy()
        step(state)
        z = state.z
        changed = np.any(state.population.F != before, axis=1)
        new = s(state.population.F[changed], dec.weights_eff[changed], z)
        old = s(before[changed], dec.weights_eff[changed], z)
        assert np.all(new <= old + 1e-12)


def test_gr_l1_only_matches_extreme_subproblems():
    result = run(RunConfig(make_problem("DTLZ3", 3), Variant.named("gr", 1), N=15, max_evaluations=3000),
                 record_matches=True)
    extreme = set(decompose(simplex_lattice_weights(3, 4), 2, 1).extreme.tolist())
    assert result.matches and set(result.matches) <= extreme


def test_ggr_matches_every_direction_vector():
    state = initialize(RunConfig(make_problem("DTLZ3", 3), Variant.named("ggr", 1.5), N=91, max_evaluations=91))
    dec = state.decomposition
    for j in dec.interior:
        assert match_subproblem(dec.lambdas[j], dec, state.variant.scalarizer, np.zeros(3)) == j


def test_determinism():
    cfg = RunConfig(make_problem("MOKP", 2, instance_seed=1), Variant.named("ggr", 1), N=20, max_evaluations=600, seed=4)
    a, b = run(cfg), run(cfg)
    assert np.array_equal(a.population.X, b.population.X)
    assert all(np.array_equal(x, y) for (_, x), (_, y) in zip(a.snapshots, b.snapshots))
    c = run(RunConfig(cfg.problem, cfg.variant, N=20, max_evaluations=600, seed=5))
    assert not np.array_equal(a.population.X, c.population.X)


def test_checkpoints():
    r = run(RunConfig(make_problem("ZDT1"), Variant.named("gr"), N=10, max_evaluations=205, checkpoints=4, T_m=3))
    assert [e for e, _ in r.snapshots] == [52, 103, 154, 205]
    assert len(r.hv_trajectory()) == 4
    assert r.evaluations == 205


def test_invalid_configs():
    p = make_problem("ZDT1")
    with pytest.raises(ConfigurationError):
        initialize(RunConfig(p, Variant.named("gr"), N=10, max_evaluations=5))
    with pytest.raises(ConfigurationError):
        initialize(RunConfig(p, Variant.named("gr"), N=10, max_evaluations=50, T_m=1))
    with pytest.raises(ConfigurationError):
        initialize(RunConfig(make_problem("DTLZ3", 3), Variant.named("gr"), N=11))
    with pytest.raises(ConfigurationError):
        Variant.named("nsga")


def test_defaults():
    assert default_neighborhood_sizes(100) == (10, 5)
    assert default_neighborhood_sizes(190) == (19, 10)
    assert default_neighborhood_sizes(210) == (21, 11)
    assert Variant.named("GGR").scalarizer.family == "glp"
    assert Variant.named("MOEA/D-GR").scalarizer.family == "lp"


def test_operators_on_combinatorial_runs():
    for family in ("MOKP", "MOTSP"):
        p = make_problem(family, 2)
        r = run(RunConfig(p, Variant.named("ggr", math.inf), N=10, max_evaluations=200, T_m=3))
        for x in r.population.X:
            p.check(x)
