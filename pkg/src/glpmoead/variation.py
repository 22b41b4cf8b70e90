"""Reproduction operators, one pair per encoding.

Each operator takes two parents and an explicit ``numpy.random.Generator`` and
returns a single offspring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EncodingError, ParameterError
from .problems import BINARY, PERMUTATION, REAL, Problem


@dataclass(frozen=True)
class OperatorParams:
    """Operator rates. ``None`` mutation rates resolve against the problem size:
    ``1/n`` for polynomial mutation and ``2/n`` per bit for bit-flip.
    """

    p_c: float = 1.0
    eta_c: float = 20.0
    p_e: float = 0.0
    p_v: float = 0.5
    p_m: float | None = None
    eta_m: float = 20.0
    binary_p_c: float = 1.0
    bit_flip: float | None = None
    permutation_p_c: float = 1.0
    inversion: float = 0.1

    def __post_init__(self):
        for name in ("p_c", "p_e", "p_v", "p_m", "binary_p_c", "bit_flip", "permutation_p_c", "inversion"):
            v = getattr(self, name)
            if v is not None and not 0.0 <= v <= 1.0:
                raise ParameterError(f"{name}={v} is not a probability")
        if self.eta_c <= 0 or self.eta_m <= 0:
            raise ParameterError("distribution indices must be positive")


def _check_bounds(x, lower, upper, what):
    if np.any(x < lower) or np.any(x > upper):
        raise EncodingError(f"{what} lies outside the box bounds")


def sbx_crossover(a, b, lower, upper, rng: np.random.Generator, p_c=1.0, eta_c=20.0, p_e=0.0, p_v=0.5):
    """Simulated binary crossover returning one child.

    With probability ``p_c`` crossover happens at all. Each variable is then
    spread with probability ``p_v`` (otherwise it is copied from a parent), and
    lands on either parent's side with equal chance, so the child distribution
    is symmetric in the parents. ``p_e`` additionally swaps variables with the
    discarded twin. Results are clipped to the bounds.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise EncodingError("parents differ in length")
    _check_bounds(a, lower, upper, "first parent")
    _check_bounds(b, lower, upper, "second parent")
    return _sbx(a, b, lower, upper, rng, p_c, eta_c, p_e, p_v)


def _sbx(a, b, lower, upper, rng, p_c, eta_c, p_e, p_v):
    if rng.random() >= p_c:
        return a.copy()
    n = a.size
    u = rng.random((3, n))
    mu = u[0]
    beta = np.where(
        mu <= 0.5,
        (2.0 * mu) ** (1.0 / (eta_c + 1.0)),
        (2.0 - 2.0 * mu) ** (-1.0 / (eta_c + 1.0)),
    )
    beta[u[1] >= p_v] = 1.0
    beta[u[2] < 0.5] *= -1.0
    if p_e > 0.0:
        beta[rng.random(n) < p_e] *= -1.0
    return np.clip(0.5 * (a + b) + 0.5 * beta * (a - b), lower, upper)


def polynomial_mutation(x, lower, upper, rng: np.random.Generator, p_m=None, eta_m=20.0):
    """Bounded polynomial mutation; each variable mutates with probability ``p_m``."""
    x = np.array(x, dtype=float, copy=True)
    n = x.size
    p_m = 1.0 / n if p_m is None else p_m
    site = rng.random(n) < p_m
    if not site.any():
        return x
    mu = rng.random(n)
    span = upper - lower
    e = 1.0 / (eta_m + 1.0)
    low = site & (mu <= 0.5)
    high = site & (mu > 0.5)
    if low.any():
        d = (x[low] - lower[low]) / span[low]
        u = mu[low]
        x[low] += span[low] * ((2.0 * u + (1.0 - 2.0 * u) * (1.0 - d) ** (eta_m + 1.0)) ** e - 1.0)
    if high.any():
        d = (upper[high] - x[high]) / span[high]
        u = mu[high]
        x[high] += span[high] * (
            1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d) ** (eta_m + 1.0)) ** e
        )
    return np.clip(x, lower, upper)


def uniform_crossover_bitflip(a, b, rng: np.random.Generator, p_c=1.0, p_flip=None):
    """Uniform crossover (each bit from either parent with probability 1/2) then bit-flip."""
    a = np.asarray(a, dtype=np.int8)
    b = np.asarray(b, dtype=np.int8)
    if a.shape != b.shape:
        raise EncodingError("parents differ in length")
    n = a.size
    p_flip = 2.0 / n if p_flip is None else p_flip
    if rng.random() < p_c:
        child = np.where(rng.random(n) < 0.5, a, b).astype(np.int8)
    else:
        child = a.copy()
    flip = rng.random(n) < p_flip
    child[flip] ^= 1
    return child


def _check_permutation(x, what):
    if not np.array_equal(np.sort(x), np.arange(x.size)):
        raise EncodingError(f"{what} is not a permutation of 0..{x.size - 1}")


def order_crossover(a, b, i: int, j: int) -> np.ndarray:
    """Keep ``a[i:j+1]`` in place and fill the other slots, left to right,
    with the missing cities in the order they appear in ``b``."""
    n = a.size
    child = np.empty(n, dtype=a.dtype)
    child[i : j + 1] = a[i : j + 1]
    taken = np.zeros(n, dtype=bool)
    taken[a[i : j + 1]] = True
    fill = b[~taken[b]]
    child[:i] = fill[:i]
    child[j + 1 :] = fill[i:]
    return child


def inversion(x, i: int, j: int) -> np.ndarray:
    """Reverse the segment ``x[i:j+1]``."""
    y = np.array(x, copy=True)
    y[i : j + 1] = y[i : j + 1][::-1]
    return y


def _segment(rng, n):
    i, j = rng.integers(0, n, size=2)
    return (i, j) if i <= j else (j, i)


def order_crossover_inversion(a, b, rng: np.random.Generator, p_c=1.0, p_inv=0.1):
    """Order crossover on a random segment, then simple inversion with rate ``p_inv``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise EncodingError("parents differ in length")
    _check_permutation(a, "first parent")
    _check_permutation(b, "second parent")
    n = a.size
    child = order_crossover(a, b, *_segment(rng, n)) if rng.random() < p_c else a.copy()
    if rng.random() < p_inv:
        child = inversion(child, *_segment(rng, n))
    return child


def make_variation(problem: Problem, params: OperatorParams | None = None):
    """Return ``child = op(a, b, rng)`` matching the problem's encoding."""
    params = params or OperatorParams()
    if problem.encoding == REAL:
        lower, upper = problem.lower, problem.upper
        p_m = 1.0 / problem.n if params.p_m is None else params.p_m

        def real_op(a, b, rng):
            # parents come from the population, already inside the bounds
            child = _sbx(a, b, lower, upper, rng, params.p_c, params.eta_c, params.p_e, params.p_v)
            return polynomial_mutation(child, lower, upper, rng, p_m, params.eta_m)

        return real_op
    if problem.encoding == BINARY:
        p_flip = 2.0 / problem.n if params.bit_flip is None else params.bit_flip

        def binary_op(a, b, rng):
            return uniform_crossover_bitflip(a, b, rng, params.binary_p_c, p_flip)

        return binary_op
    if problem.encoding == PERMUTATION:

        def permutation_op(a, b, rng):
            return order_crossover_inversion(a, b, rng, params.permutation_p_c, params.inversion)

        return permutation_op
    raise EncodingError(f"no operators for encoding {problem.encoding!r}")
