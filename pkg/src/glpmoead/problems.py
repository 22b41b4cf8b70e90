"""Benchmark problems: ZDT1-4, DTLZ1/3/5, multi-objective knapsack and TSP.

Every problem is minimized. The knapsack problem is stored as negated profits
so that larger totals give smaller objective values.

References:
    Zitzler, E., Deb, K., & Thiele, L. (2000). Comparison of multiobjective
    evolutionary algorithms: Empirical results. Evolutionary Computation, 8(2).
    Deb, K., Thiele, L., Laumanns, M., & Zitzler, E. (2005). Scalable test
    problems for evolutionary multiobjective optimization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, EncodingError, PFUnavailableError

REAL = "real"
BINARY = "binary"
PERMUTATION = "permutation"

MOKP_ITEMS = 250
MOTSP_CITIES = 60


class Problem:
    """Base class. Subclasses set ``name``, ``m``, ``n``, ``encoding`` and bounds."""

    name: str = ""
    encoding: str = REAL
    m: int = 2
    n: int = 0

    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def repair(self, x: np.ndarray) -> np.ndarray:
        return x

    def random_solution(self, rng: np.random.Generator) -> np.ndarray:
        if self.encoding == REAL:
            return self.lower + rng.random(self.n) * (self.upper - self.lower)
        if self.encoding == BINARY:
            return rng.integers(0, 2, self.n).astype(np.int8)
        return rng.permutation(self.n)

    def pf_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        raise PFUnavailableError(f"{self.name} has no analytic Pareto front")

    def check(self, x: np.ndarray) -> None:
        x = np.asarray(x)
        if x.shape != (self.n,):
            raise EncodingError(f"{self.name} expects {self.n} variables, got shape {x.shape}")
        if self.encoding == REAL:
            if np.any(x < self.lower) or np.any(x > self.upper):
                raise EncodingError(f"{self.name}: variables outside box bounds")
        elif self.encoding == BINARY:
            if np.any((x != 0) & (x != 1)):
                raise EncodingError(f"{self.name}: expected a 0/1 string")
        elif not np.array_equal(np.sort(x), np.arange(self.n)):
            raise EncodingError(f"{self.name}: expected a permutation of 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(m={self.m}, n={self.n})"


class _ZDT(Problem):
    m = 2

    def __init__(self, n: int = 30):
        self.n = n
        self.lower = np.zeros(n)
        self.upper = np.ones(n)

    def _g(self, x):
        return 1.0 + 9.0 * x[1:].sum() / (self.n - 1)

    def pf_bounds(self):
        return np.zeros(2), np.ones(2)


class ZDT1(_ZDT):
    name = "ZDT1"

    def evaluate(self, x):
        f1 = x[0]
        g = self._g(x)
        return np.array([f1, g * (1.0 - math.sqrt(f1 / g))])


class ZDT2(_ZDT):
    name = "ZDT2"

    def evaluate(self, x):
        f1 = x[0]
        g = self._g(x)
        return np.array([f1, g * (1.0 - (f1 / g) ** 2)])


# f1 intervals of the five disconnected ZDT3 front pieces
ZDT3_PF_INTERVALS = (
    (0.0, 0.0830015349),
    (0.1822287280, 0.2577623634),
    (0.4093136748, 0.4538821041),
    (0.6183967944, 0.6525117038),
    (0.8233317983, 0.8518328654),
)


class ZDT3(_ZDT):
    name = "ZDT3"

    def evaluate(self, x):
        f1 = x[0]
        g = self._g(x)
        r = f1 / g
        return np.array([f1, g * (1.0 - math.sqrt(r) - r * math.sin(10.0 * math.pi * f1))])

    def pf_bounds(self):
        return np.array([0.0, -0.7733690123]), np.array([0.8518328654, 1.0])


class ZDT4(_ZDT):
    name = "ZDT4"

    def __init__(self, n: int = 10):
        super().__init__(n)
        self.lower = np.full(n, -5.0)
        self.upper = np.full(n, 5.0)
        self.lower[0], self.upper[0] = 0.0, 1.0

    def _g(self, x):
        t = x[1:]
        return 1.0 + 10.0 * (self.n - 1) + float(np.sum(t * t - 10.0 * np.cos(4.0 * math.pi * t)))

    def evaluate(self, x):
        f1 = x[0]
        g = self._g(x)
        return np.array([f1, g * (1.0 - math.sqrt(f1 / g))])


class _DTLZ(Problem):
    def __init__(self, m: int = 3, n: int | None = None):
        if m < 2:
            raise ConfigurationError("DTLZ needs m >= 2")
        self.m = m
        self.n = m + 4 if n is None else n
        if self.n < m:
            raise ConfigurationError(f"DTLZ needs n >= m, got n={self.n}")
        self.lower = np.zeros(self.n)
        self.upper = np.ones(self.n)

    def _rastrigin_g(self, xm):
        d = xm - 0.5
        return 100.0 * (xm.size + float(np.sum(d * d - np.cos(20.0 * math.pi * d))))

    @staticmethod
    def _spherical(theta, radius):
        # theta: m-1 angles in radians
        m = theta.size + 1
        c = np.cos(theta)
        s = np.sin(theta)
        f = np.empty(m)
        prod = 1.0
        cum = np.ones(m)
        for i in range(m - 1):
            cum[i + 1] = prod = prod * c[i]
        for k in range(m):
            # f_k uses cos of the first m-1-k angles and sin of the next one
            f[k] = cum[m - 1 - k] * (s[m - 1 - k] if k > 0 else 1.0)
        return radius * f


class DTLZ1(_DTLZ):
    name = "DTLZ1"

    def evaluate(self, x):
        m = self.m
        g = self._rastrigin_g(x[m - 1:])
        xs = x[: m - 1]
        f = np.empty(m)
        for k in range(m):
            v = float(np.prod(xs[: m - 1 - k]))
            if k > 0:
                v *= 1.0 - xs[m - 1 - k]
            f[k] = v
        return 0.5 * (1.0 + g) * f

    def pf_bounds(self):
        return np.zeros(self.m), np.full(self.m, 0.5)


class DTLZ3(_DTLZ):
    name = "DTLZ3"

    def evaluate(self, x):
        m = self.m
        g = self._rastrigin_g(x[m - 1:])
        return self._spherical(x[: m - 1] * (math.pi / 2.0), 1.0 + g)

    def pf_bounds(self):
        return np.zeros(self.m), np.ones(self.m)


class DTLZ5(_DTLZ):
    name = "DTLZ5"

    def evaluate(self, x):
        m = self.m
        d = x[m - 1:] - 0.5
        g = float(np.sum(d * d))
        theta = np.empty(m - 1)
        theta[0] = x[0] * (math.pi / 2.0)
        theta[1:] = math.pi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[1 : m - 1])
        return self._spherical(theta, 1.0 + g)

    def pf_bounds(self):
        # on the front every angle after the first is pi/4
        c = math.sqrt(0.5)
        upper = np.array([c ** (self.m - 2)] + [c ** (self.m - k) for k in range(2, self.m + 1)])
        return np.zeros(self.m), upper


@dataclass(frozen=True, eq=False)
class MOKPInstance:
    profits: np.ndarray
    weights: np.ndarray
    capacities: np.ndarray
    seed: int | None = None

    @property
    def m(self) -> int:
        return self.profits.shape[0]

    @property
    def n(self) -> int:
        return self.profits.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, MOKPInstance)
            and np.array_equal(self.profits, other.profits)
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.capacities, other.capacities)
        )


@dataclass(frozen=True, eq=False)
class MOTSPInstance:
    costs: np.ndarray
    seed: int | None = None

    @property
    def m(self) -> int:
        return self.costs.shape[0]

    @property
    def n(self) -> int:
        return self.costs.shape[1]

    def __eq__(self, other):
        return isinstance(other, MOTSPInstance) and np.array_equal(self.costs, other.costs)


def generate_instance(family: str, m: int, seed: int, size: int | None = None):
    """Random MOKP or MOTSP instance, fully determined by ``seed``.

    MOKP: profits and weights uniform on the integers 10..100, capacity half of
    each total weight. MOTSP: costs uniform on [0, 1], symmetric, zero diagonal.
    """
    family = family.upper()
    rng = np.random.default_rng(seed)
    if family == "MOKP":
        n = MOKP_ITEMS if size is None else size
        profits = rng.integers(10, 101, size=(m, n))
        weights = rng.integers(10, 101, size=(m, n))
        capacities = weights.sum(axis=1) // 2
        return MOKPInstance(profits, weights, capacities, seed)
    if family == "MOTSP":
        n = MOTSP_CITIES if size is None else size
        C = rng.random((m, n, n))
        upper = np.triu(C, k=1)
        C = upper + np.transpose(upper, (0, 2, 1))
        return MOTSPInstance(C, seed)
    raise ConfigurationError(f"no instance generator for {family!r}")


def repair_knapsack(instance: MOKPInstance, bits, order: np.ndarray | None = None) -> np.ndarray:
    """Drop items until every capacity holds.

    Items go in ascending order of their best profit/weight ratio over the
    objectives; ties drop the lower index first. ``order`` may carry that
    ordering precomputed.
    """
    x = np.array(bits, dtype=np.int8, copy=True)
    load = instance.weights @ x
    if np.all(load <= instance.capacities):
        return x
    for item in _repair_order(instance) if order is None else order:
        if x[item]:
            x[item] = 0
            load -= instance.weights[:, item]
            if np.all(load <= instance.capacities):
                break
    return x


def _repair_order(instance: MOKPInstance) -> np.ndarray:
    ratio = (instance.profits / instance.weights).max(axis=0)
    return np.argsort(ratio, kind="stable")


class MOKP(Problem):
    name = "MOKP"
    encoding = BINARY

    def __init__(self, instance: MOKPInstance):
        self.instance = instance
        self.m = instance.m
        self.n = instance.n
        self._order = _repair_order(instance)

    def repair(self, x):
        return repair_knapsack(self.instance, x, self._order)

    def evaluate(self, x):
        x = self.repair(x)
        return -(self.instance.profits @ x).astype(float)


class MOTSP(Problem):
    name = "MOTSP"
    encoding = PERMUTATION

    def __init__(self, instance: MOTSPInstance):
        self.instance = instance
        self.m = instance.m
        self.n = instance.n

    def evaluate(self, x):
        x = np.asarray(x)
        nxt = np.roll(x, -1)
        return self.instance.costs[:, x, nxt].sum(axis=1)


REAL_FAMILIES = {
    "ZDT1": (ZDT1, 30),
    "ZDT2": (ZDT2, 30),
    "ZDT3": (ZDT3, 30),
    "ZDT4": (ZDT4, 10),
    "DTLZ1": (DTLZ1, None),
    "DTLZ3": (DTLZ3, None),
    "DTLZ5": (DTLZ5, None),
}
COMBINATORIAL_FAMILIES = ("MOKP", "MOTSP")
FAMILIES = tuple(REAL_FAMILIES) + COMBINATORIAL_FAMILIES


def make_problem(family: str, m: int = 2, instance=None, instance_seed: int = 0) -> Problem:
    """Build a problem by family name; MOKP/MOTSP generate an instance if none is given."""
    key = family.upper()
    if key in REAL_FAMILIES:
        cls, n = REAL_FAMILIES[key]
        if key.startswith("ZDT"):
            if m != 2:
                raise ConfigurationError(f"{key} is bi-objective, got m={m}")
            return cls(n)
        return cls(m)
    if key in COMBINATORIAL_FAMILIES:
        if instance is None:
            instance = generate_instance(key, m, instance_seed)
        return MOKP(instance) if key == "MOKP" else MOTSP(instance)
    raise ConfigurationError(f"unknown problem {family!r}")


def pf_bounds(problem: Problem) -> tuple[np.ndarray, np.ndarray]:
    """Per-objective minimum and maximum over the true Pareto front."""
    return problem.pf_bounds()


# -- instance files ---------------------------------------------------------
#
#   family MOKP
#   m 2
#   n 250
#   seed 7
#   [profits]      m rows of n integers
#   [weights]      m rows of n integers
#   [capacities]   one row of m integers
#
# MOTSP files carry ``[cost k]`` sections (k = 1..m) of n rows each. Reals are
# written with ``repr`` so a save/load cycle is bit-exact.


def save_instance(instance, path) -> None:
    lines = []
    if isinstance(instance, MOKPInstance):
        lines += ["family MOKP", f"m {instance.m}", f"n {instance.n}", f"seed {instance.seed}"]
        for title, rows in (("profits", instance.profits), ("weights", instance.weights)):
            lines.append(f"[{title}]")
            lines += [" ".join(str(int(v)) for v in row) for row in rows]
        lines.append("[capacities]")
        lines.append(" ".join(str(int(v)) for v in instance.capacities))
    elif isinstance(instance, MOTSPInstance):
        lines += ["family MOTSP", f"m {instance.m}", f"n {instance.n}", f"seed {instance.seed}"]
        for k, C in enumerate(instance.costs, start=1):
            lines.append(f"[cost {k}]")
            lines += [" ".join(repr(float(v)) for v in row) for row in C]
    else:
        raise TypeError(f"cannot save {type(instance).__name__}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_instance(path):
    header: dict[str, str] = {}
    sections: dict[str, list[str]] = {}
    current = None
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("["):
            current = line.strip("[]")
            sections[current] = []
        elif current is None:
            key, _, value = line.partition(" ")
            header[key] = value.strip()
        else:
            sections[current].append(line)
    family = header.get("family", "").upper()
    m, n = int(header["m"]), int(header["n"])
    seed = None if header.get("seed", "None") == "None" else int(header["seed"])

    def grid(name, dtype):
        return np.array([[dtype(v) for v in row.split()] for row in sections[name]])

    if family == "MOKP":
        profits = grid("profits", int)
        weights = grid("weights", int)
        capacities = grid("capacities", int)[0]
        inst = MOKPInstance(profits, weights, capacities, seed)
    elif family == "MOTSP":
        costs = np.stack([grid(f"cost {k}", float) for k in range(1, m + 1)])
        inst = MOTSPInstance(costs, seed)
    else:
        raise ConfigurationError(f"unknown instance family {family!r} in {path}")
    if inst.m != m or inst.n != n:
        raise ConfigurationError(f"{path}: header says m={m}, n={n}; data disagrees")
    return inst
