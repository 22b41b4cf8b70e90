"""Objective vectors, Pareto dominance, populations and reference points.

Objective vectors are plain 1-D float arrays of length ``m``; sets of them are
``(k, m)`` arrays. Everything is minimized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError

DEFAULT_EPSILON = 1e-4


def as_objectives(values) -> np.ndarray:
    f = np.asarray(values, dtype=float)
    if f.ndim != 1:
        raise DimensionError(f"objective vector must be 1-D, got shape {f.shape}")
    return f


def dominates(u, v) -> bool:
    """Return True if ``u`` Pareto-dominates ``v`` (minimization)."""
    u = as_objectives(u)
    v = as_objectives(v)
    if u.shape != v.shape:
        raise DimensionError(f"cannot compare vectors of length {u.size} and {v.size}")
    return bool(np.all(u <= v) and np.any(u < v))


def nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row.

    Duplicated rows are all kept by the mask; see :func:`nondominated_filter`.
    """
    P = np.asarray(points, dtype=float)
    n = P.shape[0]
    mask = np.ones(n, dtype=bool)
    for i in range(n):
        if not mask[i]:
            continue
        # rows dominated by P[i]
        le = np.all(P[i] <= P, axis=1)
        lt = np.any(P[i] < P, axis=1)
        mask &= ~(le & lt)
    return mask


def nondominated_filter(points) -> np.ndarray:
    """Non-dominated members of ``points`` with exact duplicates collapsed.

    The first occurrence of every retained vector is kept, in input order.
    An empty input gives an empty ``(0, m)`` array.
    """
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        return P.reshape(0, P.shape[1] if P.ndim == 2 else 0)
    if P.ndim != 2:
        raise DimensionError(f"expected a (k, m) array, got shape {P.shape}")
    P = P[nondominated_mask(P)]
    _, first = np.unique(P, axis=0, return_index=True)
    return P[np.sort(first)]


@dataclass(frozen=True)
class ReferencePoint:
    """Reference point ``z*`` used by the scalarizing functions.

    ``ideal`` holds the running per-objective minimum. In utopian mode the
    effective point is shifted down by ``epsilon``.
    """

    ideal: np.ndarray
    mode: str = "ideal"
    epsilon: np.ndarray | float = DEFAULT_EPSILON

    def __post_init__(self):
        if self.mode not in ("ideal", "utopian"):
            raise ParameterError(f"unknown reference mode {self.mode!r}")
        object.__setattr__(self, "ideal", np.asarray(self.ideal, dtype=float))
        eps = np.broadcast_to(np.asarray(self.epsilon, dtype=float), self.ideal.shape)
        if self.mode == "utopian" and np.any(eps <= 0):
            raise ParameterError("utopian epsilon must be strictly positive")
        object.__setattr__(self, "epsilon", eps)

    @classmethod
    def empty(cls, m: int, mode: str = "ideal", epsilon=DEFAULT_EPSILON) -> ReferencePoint:
        return cls(np.full(m, np.inf), mode, epsilon)

    @property
    def values(self) -> np.ndarray:
        if self.mode == "utopian":
            return self.ideal - self.epsilon
        return self.ideal

    def __len__(self) -> int:
        return self.ideal.size


def update_ideal(z: ReferencePoint, f) -> ReferencePoint:
    """Return ``z`` with its ideal entries lowered to ``min(z, f)``."""
    f = as_objectives(f)
    if f.shape != z.ideal.shape:
        raise DimensionError(f"reference point has {len(z)} entries, objective vector {f.size}")
    return ReferencePoint(np.minimum(z.ideal, f), z.mode, z.epsilon)


@dataclass
class Individual:
    x: np.ndarray
    f: np.ndarray


@dataclass
class Population:
    """N solutions stored row-wise; row ``j`` belongs to subproblem ``j``."""

    X: np.ndarray
    F: np.ndarray

    def __post_init__(self):
        if self.X.shape[0] != self.F.shape[0]:
            raise DimensionError("decision and objective arrays disagree on population size")

    def __len__(self) -> int:
        return self.F.shape[0]

    def __getitem__(self, j: int) -> Individual:
        return Individual(self.X[j], self.F[j])

    def __iter__(self):
        return (self[j] for j in range(len(self)))

    def copy(self) -> Population:
        return Population(self.X.copy(), self.F.copy())
