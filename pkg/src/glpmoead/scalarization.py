"""Scalarizing functions for decomposition: weighted Lp, Tchebycheff and GLp.

All functions broadcast over leading axes, so a single objective vector can be
scored against a whole ``(N, m)`` weight matrix in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, ParameterError

WEIGHT_FLOOR = 1e-6
FAMILIES = ("lp", "glp")


def clamp_weights(w, floor: float = WEIGHT_FLOOR) -> np.ndarray:
    """Raise entries below ``floor`` to ``floor`` and renormalize each row to sum 1."""
    w = np.asarray(w, dtype=float)
    w = np.where(w < floor, floor, w)
    return w / w.sum(axis=-1, keepdims=True)


def _check_p(p: float) -> float:
    p = float(p)
    if not p >= 1.0:
        raise ParameterError(f"exponent p must be >= 1, got {p}")
    return p


def _weighted_deviation(f, w, z, absolute: bool = True) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    if not (f.shape[-1] == w.shape[-1] == z.shape[-1]):
        raise DimensionError(
            f"dimension mismatch: f has {f.shape[-1]}, w has {w.shape[-1]}, z has {z.shape[-1]}"
        )
    d = f - z
    return w * (np.abs(d) if absolute else d)


def pnorm(a: np.ndarray, p: float) -> np.ndarray:
    """p-norm over the last axis of a non-negative array; ``p=inf`` gives the max.

    Rescales by the row maximum so that very large ``p`` neither overflows nor
    underflows.
    """
    if p == 1.0:
        return a.sum(axis=-1)
    top = a.max(axis=-1)
    if math.isinf(p):
        return top
    if p == 2.0:
        return np.sqrt(np.einsum("...i,...i->...", a, a))
    safe = np.where(top > 0, top, 1.0)
    r = a / safe[..., None]
    return np.where(top > 0, safe * np.sum(r**p, axis=-1) ** (1.0 / p), 0.0)


def scalarize_lp(f, w, z, p: float):
    """Weighted Lp distance ``(sum_i (w_i |f_i - z_i|)^p)^(1/p)`` for finite ``p >= 1``."""
    p = _check_p(p)
    if math.isinf(p):
        raise ParameterError("scalarize_lp needs a finite p; use scalarize_tch for p=inf")
    return pnorm(_weighted_deviation(f, w, z), p)


def scalarize_tch(f, w, z):
    """Weighted Tchebycheff value ``max_i w_i (f_i - z_i)``."""
    return _weighted_deviation(f, w, z, absolute=False).max(axis=-1)


def h_weight(w):
    """Weight correction ``(prod_i w_i)^(-1/m)`` of the GLp family.

    Equals ``m`` at the uniform weight and grows without bound toward the
    simplex boundary, hence the strictly-positive requirement.
    """
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise DomainError("h(w) requires strictly positive weights; clamp first")
    return np.exp(-np.mean(np.log(w), axis=-1))


def scalarize_glp(f, w, z, p: float):
    """GLp value: the Lp (or Tchebycheff for ``p=inf``) value times ``h(w)``."""
    p = _check_p(p)
    base = scalarize_tch(f, w, z) if math.isinf(p) else scalarize_lp(f, w, z, p)
    return base * h_weight(w)


def direction_vector(w) -> np.ndarray:
    """Direction vector ``1 / w`` of a subproblem."""
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise DomainError("direction vector undefined for zero weight entries; clamp first")
    return 1.0 / w


def parse_exponent(token) -> float:
    """Parse ``1``, ``2.5``, ``inf`` or ``infinity`` into a float exponent."""
    if isinstance(token, str):
        t = token.strip().lower()
        if t in ("inf", "infinity", "∞"):
            return math.inf
        token = t
    try:
        return _check_p(float(token))
    except ValueError as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"cannot parse exponent {token!r}") from None


@dataclass(frozen=True)
class Scalarizer:
    """Subproblem function selector: family ``lp`` or ``glp`` with exponent ``p``.

    ``p = inf`` selects the Tchebycheff form. ``reference`` only records which
    reference-point mode the run uses.
    """

    family: str = "lp"
    p: float = 1.0
    reference: str = "ideal"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown scalarizer family {self.family!r}")
        object.__setattr__(self, "p", _check_p(self.p))
        if self.reference not in ("ideal", "utopian"):
            raise ParameterError(f"unknown reference mode {self.reference!r}")

    @property
    def label(self) -> str:
        p = "inf" if math.isinf(self.p) else f"{self.p:g}"
        return f"{'GL' if self.family == 'glp' else 'L'}{p}"

    def scale(self, w) -> np.ndarray:
        """Per-weight multiplier: ``h(w)`` for GLp, ones for Lp."""
        w = np.asarray(w, dtype=float)
        if self.family == "glp":
            return h_weight(w)
        return np.ones(w.shape[:-1])

    def raw(self, f, w, z) -> np.ndarray:
        """Lp / Tchebycheff part only, without the weight multiplier."""
        if math.isinf(self.p):
            return scalarize_tch(f, w, z)
        return pnorm(_weighted_deviation(f, w, z), self.p)

    def __call__(self, f, w, z, scale=None):
        """Scalarized value; pass a precomputed ``scale`` to skip recomputing ``h(w)``."""
        value = self.raw(f, w, z)
        if self.family == "glp":
            value = value * (self.scale(w) if scale is None else scale)
        return value
