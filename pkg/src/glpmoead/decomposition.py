"""Weight vectors, neighborhoods and boundary handling for MOEA/D.

Indices are 0-based throughout: subproblem ``j`` owns row ``j`` of every array.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import comb

import numpy as np

from .errors import ConfigurationError, LatticeError, ParameterError
from .scalarization import WEIGHT_FLOOR, clamp_weights, h_weight

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTREME = "extreme_boundary"

MAX_LATTICE_SIZE = 10_000_000
MINIMAL_TOL = 1e-12


def lattice_size(m: int, H: int) -> int:
    return comb(H + m - 1, m - 1)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k, *rest)


def simplex_lattice_weights(m: int, H: int) -> np.ndarray:
    """All weights ``k / H`` with non-negative integer ``k`` summing to ``H``.

    Rows come in lexicographic order of ``k``, so for ``m = 2`` the first row is
    ``(0, 1)`` and the last ``(1, 0)``.
    """
    if m < 2:
        raise ParameterError(f"need at least 2 objectives, got m={m}")
    if H < 1:
        raise ParameterError(f"need at least 1 division, got H={H}")
    if lattice_size(m, H) > MAX_LATTICE_SIZE:
        raise ParameterError(f"lattice C({H + m - 1},{m - 1}) exceeds {MAX_LATTICE_SIZE} weights")
    K = np.array(list(_compositions(H, m)), dtype=float)
    return K / H


def lattice_divisions(m: int, N: int) -> int:
    """Number of divisions ``H`` whose lattice has exactly ``N`` weights.

    Raises :class:`LatticeError` naming the closest feasible sizes otherwise.
    """
    if N < 1:
        raise LatticeError(f"population size must be positive, got {N}")
    H, size = 1, lattice_size(m, 1)
    below = None
    while size < N:
        below = size
        H += 1
        size = lattice_size(m, H)
    if size == N:
        return H
    raise LatticeError(
        f"N={N} is not a simplex-lattice size for m={m}; nearest feasible sizes are "
        f"{below} and {size}",
        below=below,
        above=size,
    )


def read_weight_file(path) -> np.ndarray:
    """Load weights written one vector per line, whitespace separated."""
    W = np.loadtxt(path, dtype=float, ndmin=2)
    if W.shape[1] < 2:
        raise ParameterError("weight file must have at least two columns")
    return W


def build_neighborhoods(weights, T_m: int, T_r: int) -> tuple[np.ndarray, list[np.ndarray]]:
    """Mating and replacement neighborhoods from Euclidean weight distances.

    Each neighborhood lists the ``T`` closest weights, self first, nearest
    first, ties going to the lower index.
    """
    W = np.asarray(weights, dtype=float)
    N = W.shape[0]
    for name, T in (("T_m", T_m), ("T_r", T_r)):
        if T < 1:
            raise ParameterError(f"{name} must be at least 1, got {T}")
        if T > N:
            raise ParameterError(f"{name}={T} exceeds the number of subproblems {N}")
    D = np.linalg.norm(W[:, None, :] - W[None, :, :], axis=-1)
    # equal lattice distances can differ in the last bits; round so ties stay ties
    D = np.round(D, 12)
    order = np.argsort(D, axis=1, kind="stable")
    B_m = order[:, :T_m].copy()
    B_r = [order[j, :T_r].copy() for j in range(N)]
    return B_m, B_r


def classify_boundary(w, minimal: float = 0.0) -> str:
    """Interior, boundary (some entry minimal) or extreme boundary (``m - 1`` minimal)."""
    w = np.asarray(w, dtype=float)
    count = int(np.sum(np.abs(w - minimal) <= MINIMAL_TOL))
    if count == 0:
        return INTERIOR
    if count == w.size - 1:
        return EXTREME
    return BOUNDARY


def classify_boundaries(weights) -> list[str]:
    """Classify every row; the minimal entry is the smallest value in the whole set."""
    W = np.asarray(weights, dtype=float)
    lowest = float(W.min())
    return [classify_boundary(w, lowest) for w in W]


@dataclass(frozen=True)
class Decomposition:
    """Subproblem table shared by a run.

    ``weights`` are the raw lattice values and drive geometry; ``weights_eff``
    are the clamped weights used by every scalarizing function.
    """

    weights: np.ndarray
    weights_eff: np.ndarray
    lambdas: np.ndarray
    h: np.ndarray
    mating: np.ndarray
    replacement: tuple[np.ndarray, ...]
    boundary: tuple[str, ...]

    def __len__(self) -> int:
        return self.weights.shape[0]

    @property
    def m(self) -> int:
        return self.weights.shape[1]

    @property
    def interior(self) -> np.ndarray:
        return np.array([j for j, b in enumerate(self.boundary) if b == INTERIOR], dtype=int)

    @property
    def boundary_indices(self) -> np.ndarray:
        return np.array([j for j, b in enumerate(self.boundary) if b != INTERIOR], dtype=int)

    @property
    def extreme(self) -> np.ndarray:
        return np.array([j for j, b in enumerate(self.boundary) if b == EXTREME], dtype=int)


def decompose(weights, T_m: int, T_r: int, floor: float = WEIGHT_FLOOR) -> Decomposition:
    W = np.asarray(weights, dtype=float)
    if np.any(np.abs(W.sum(axis=1) - 1.0) > 1e-9) or np.any(W < 0):
        raise ParameterError("weights must be non-negative and sum to 1")
    W_eff = clamp_weights(W, floor)
    B_m, B_r = build_neighborhoods(W, T_m, T_r)
    return Decomposition(
        weights=W,
        weights_eff=W_eff,
        lambdas=1.0 / W_eff,
        h=h_weight(W_eff),
        mating=B_m,
        replacement=tuple(B_r),
        boundary=tuple(classify_boundaries(W)),
    )


def augment_boundary_neighborhoods(dec: Decomposition) -> Decomposition:
    """Append each boundary subproblem to the replacement neighborhood of its
    closest interior subproblem (ties to the lower index).

    Mating neighborhoods are untouched.
    """
    interior = dec.interior
    if interior.size == 0:
        raise ConfigurationError("no interior subproblem to attach boundary subproblems to")
    B_r = [np.array(b, copy=True) for b in dec.replacement]
    for b in dec.boundary_indices:
        d = np.linalg.norm(dec.weights[interior] - dec.weights[b], axis=1)
        q = interior[int(np.argmin(d))]
        if b not in B_r[q]:
            B_r[q] = np.append(B_r[q], b)
    return replace(dec, replacement=tuple(B_r))
