"""MOEA/D main loop with neighborhood, global (GR) and generalized global (GGR) replacement.

In plain MOEA/D a child produced for subproblem ``j`` may only replace
solutions in ``j``'s replacement neighborhood. GR first finds the subproblem
the child scores best on and replaces within that subproblem's neighborhood
instead. GGR does the same with the GLp scalarizer and with every boundary
subproblem attached to the neighborhood of its nearest interior subproblem.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .core import Population, ReferencePoint, nondominated_filter
from .decomposition import Decomposition, augment_boundary_neighborhoods, decompose, lattice_divisions, simplex_lattice_weights
from .errors import ConfigurationError, NumericError
from .metrics import normalized_hypervolume
from .problems import Problem
from .scalarization import Scalarizer
from .variation import OperatorParams, make_variation

MOEAD = "moead"
GR = "gr"
GGR = "ggr"
STRATEGIES = (MOEAD, GR, GGR)
LABELS = {MOEAD: "MOEA/D", GR: "MOEA/D-GR", GGR: "MOEA/D-GGR"}


@dataclass(frozen=True)
class Variant:
    strategy: str
    scalarizer: Scalarizer

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f"unknown strategy {self.strategy!r}")

    @classmethod
    def named(cls, strategy: str, p: float = 1.0, family: str | None = None, reference: str = "ideal") -> Variant:
        """Build a variant; GGR defaults to the GLp family, the others to Lp."""
        strategy = strategy.lower().replace("moea/d-", "").replace("moead-", "")
        if strategy in ("moea/d", "vanilla"):
            strategy = MOEAD
        if strategy not in STRATEGIES:
            raise ConfigurationError(f"unknown algorithm {strategy!r}")
        if family is None:
            family = "glp" if strategy == GGR else "lp"
        return cls(strategy, Scalarizer(family, p, reference))

    @property
    def label(self) -> str:
        return LABELS[self.strategy]

    @property
    def global_matching(self) -> bool:
        return self.strategy in (GR, GGR)


def default_neighborhood_sizes(N: int) -> tuple[int, int]:
    """``T_m = round(0.1 N)`` and ``T_r = ceil(0.05 N)``."""
    return max(2, int(round(0.1 * N))), max(1, math.ceil(0.05 * N - 1e-9))


def match_subproblem(f, dec: Decomposition, scalarizer: Scalarizer, z) -> int:
    """Index of the subproblem on which ``f`` scores lowest (ties to the lower index)."""
    values = scalarizer(f, dec.weights_eff, z, scale=dec.h)
    k = int(np.argmin(values))
    if not math.isfinite(values[k]):
        raise NumericError(f"non-finite scalarization value for objective vector {f}")
    return k


def replace_in_neighborhood(x_new, f_new, neighborhood, population: Population, dec: Decomposition,
                            scalarizer: Scalarizer, z) -> int:
    """Replace every neighborhood member that ``f_new`` strictly improves on.

    For a fixed weight the GLp multiplier is a positive constant, so the
    comparison is made on the unscaled values.
    """
    idx = np.asarray(neighborhood)
    W = dec.weights_eff[idx]
    better = scalarizer.raw(f_new, W, z) < scalarizer.raw(population.F[idx], W, z)
    hit = idx[better]
    if hit.size:
        population.X[hit] = x_new
        population.F[hit] = f_new
    return int(hit.size)


@dataclass
class RunConfig:
    problem: Problem
    variant: Variant
    N: int = 100
    max_evaluations: int = 25000
    seed: int = 0
    T_m: int | None = None
    T_r: int | None = None
    checkpoints: int = 20
    weights: np.ndarray | None = None
    operators: OperatorParams = field(default_factory=OperatorParams)
    epsilon: float = 1e-4

    def resolved_neighborhoods(self) -> tuple[int, int]:
        T_m, T_r = default_neighborhood_sizes(self.N)
        return (T_m if self.T_m is None else self.T_m, T_r if self.T_r is None else self.T_r)


@dataclass
class RunState:
    problem: Problem
    variant: Variant
    decomposition: Decomposition
    population: Population
    ideal: np.ndarray
    rng: np.random.Generator
    variation: object
    budget: int
    epsilon: np.ndarray
    evaluations: int = 0
    truncated: bool = False
    thresholds: list[int] = field(default_factory=list)
    snapshots: list[tuple[int, np.ndarray]] = field(default_factory=list)
    matches: list[int] | None = None

    @property
    def reference(self) -> ReferencePoint:
        return ReferencePoint(self.ideal.copy(), self.variant.scalarizer.reference, self.epsilon)

    @property
    def z(self) -> np.ndarray:
        if self.variant.scalarizer.reference == "utopian":
            return self.ideal - self.epsilon
        return self.ideal

    @property
    def exhausted(self) -> bool:
        return self.evaluations >= self.budget

    def _count(self) -> None:
        self.evaluations += 1
        while self.thresholds and self.evaluations >= self.thresholds[0]:
            self.snapshots.append((self.thresholds.pop(0), self.population.F.copy()))


def _weights_for(config: RunConfig) -> np.ndarray:
    if config.weights is not None:
        W = np.asarray(config.weights, dtype=float)
        if W.shape != (config.N, config.problem.m):
            raise ConfigurationError(f"weight set has shape {W.shape}, expected ({config.N}, {config.problem.m})")
        return W
    return simplex_lattice_weights(config.problem.m, lattice_divisions(config.problem.m, config.N))


def initialize(config: RunConfig, record_matches: bool = False) -> RunState:
    """Validate the configuration, build the subproblems and evaluate a random population."""
    problem = config.problem
    if config.max_evaluations < config.N:
        raise ConfigurationError(f"budget {config.max_evaluations} is smaller than N={config.N}")
    if config.checkpoints < 1:
        raise ConfigurationError("need at least one checkpoint")
    T_m, T_r = config.resolved_neighborhoods()
    if T_m < 2:
        raise ConfigurationError("T_m must be at least 2 to draw two distinct parents")
    dec = decompose(_weights_for(config), T_m, T_r)
    if config.variant.strategy == GGR:
        dec = augment_boundary_neighborhoods(dec)
    rng = np.random.default_rng(config.seed)
    X = np.array([problem.repair(problem.random_solution(rng)) for _ in range(config.N)])
    F = np.empty((config.N, problem.m))
    budget = config.max_evaluations
    C = config.checkpoints
    state = RunState(
        problem=problem,
        variant=config.variant,
        decomposition=dec,
        population=Population(X, F),
        ideal=np.full(problem.m, np.inf),
        rng=rng,
        variation=make_variation(problem, config.operators),
        budget=budget,
        epsilon=np.full(problem.m, config.epsilon),
        thresholds=[math.ceil(k * budget / C) for k in range(1, C + 1)],
        matches=[] if record_matches else None,
    )
    for j in range(config.N):
        F[j] = problem.evaluate(X[j])
    state.ideal = F.min(axis=0)
    for _ in range(config.N):
        state._count()
    return state


def step(state: RunState) -> RunState:
    """One generation: a child per subproblem in index order, each followed by replacement.

    Stops early, flagging ``truncated``, if the budget runs out mid-generation.
    """
    dec = state.decomposition
    pop = state.population
    scal = state.variant.scalarizer
    rng = state.rng
    problem = state.problem
    N = len(dec)
    picks = rng.random((N, 2))
    for j in range(N):
        if state.exhausted:
            state.truncated = True
            return state
        nb = dec.mating[j]
        T = nb.size
        k1 = int(picks[j, 0] * T)
        k2 = int(picks[j, 1] * (T - 1))
        if k2 >= k1:
            k2 += 1
        x_new = problem.repair(state.variation(pop.X[nb[k1]], pop.X[nb[k2]], rng))
        f_new = problem.evaluate(x_new)
        np.minimum(state.ideal, f_new, out=state.ideal)
        state._count()
        z = state.z
        if state.variant.global_matching:
            k = match_subproblem(f_new, dec, scal, z)
            if state.matches is not None:
                state.matches.append(k)
        else:
            k = j
        replace_in_neighborhood(x_new, f_new, dec.replacement[k], pop, dec, scal, z)
    return state


@dataclass
class RunResult:
    config: RunConfig
    population: Population
    evaluations: int
    truncated: bool
    snapshots: list[tuple[int, np.ndarray]]
    wall_time: float
    matches: list[int] | None = None

    @property
    def front(self) -> np.ndarray:
        return nondominated_filter(self.population.F)

    def hv_trajectory(self, lower=None, upper=None) -> list[tuple[int, float]]:
        """Normalized hypervolume of the population at every checkpoint."""
        if lower is None:
            lower, upper = self.config.problem.pf_bounds()
        return [(e, normalized_hypervolume(F, lower, upper)) for e, F in self.snapshots]

    def hypervolume(self, lower=None, upper=None) -> float:
        if lower is None:
            lower, upper = self.config.problem.pf_bounds()
        return normalized_hypervolume(self.population.F, lower, upper)


def run(config: RunConfig, record_matches: bool = False) -> RunResult:
    """Run to the evaluation budget; identical configs give identical results."""
    start = time.perf_counter()
    state = initialize(config, record_matches)
    while not state.exhausted:
        step(state)
    return RunResult(
        config=config,
        population=state.population,
        evaluations=state.evaluations,
        truncated=state.truncated,
        snapshots=state.snapshots,
        wall_time=time.perf_counter() - start,
        matches=state.matches,
    )
