"""Hypervolume with front normalization, pooled reference fronts, rank-sum tests."""

from __future__ import annotations

import numpy as np
from scipy import stats

from .core import nondominated_filter
from .errors import ConfigurationError, GlpMoeadError

HV_REFERENCE = 1.1


def normalize(points, lower, upper) -> np.ndarray:
    """Map each objective linearly so that ``lower -> 0`` and ``upper -> 1``."""
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if np.any(upper <= lower):
        raise ConfigurationError(f"degenerate normalization bounds {lower} .. {upper}")
    P = np.asarray(points, dtype=float)
    return (P - lower) / (upper - lower)


def _inside(P: np.ndarray, ref: np.ndarray) -> np.ndarray:
    return P[np.all(P < ref, axis=1)]


def _hv2d(P: np.ndarray, ref: np.ndarray) -> float:
    P = P[np.lexsort((P[:, 1], P[:, 0]))]
    volume = 0.0
    best = ref[1]
    for f1, f2 in P:
        if f2 < best:
            volume += (ref[0] - f1) * (best - f2)
            best = f2
    return volume


def _hv_slice(P: np.ndarray, ref: np.ndarray) -> float:
    # sweep the last objective; each slab is the hypervolume of the points below it
    m = P.shape[1]
    if m == 2:
        return _hv2d(P, ref)
    P = P[np.argsort(P[:, -1], kind="stable")]
    volume = 0.0
    front = P[:0, :-1]
    for i in range(P.shape[0]):
        q = P[i, :-1]
        if not np.any(np.all(front <= q, axis=1)):
            front = np.vstack([front[~np.all(q <= front, axis=1)], q])
        upper = P[i + 1, -1] if i + 1 < P.shape[0] else ref[-1]
        depth = upper - P[i, -1]
        if depth > 0.0:
            volume += depth * _hv_slice(front, ref[:-1])
    return volume


def hypervolume(points, reference=None) -> float:
    """Exact dominated volume of ``points`` up to ``reference`` (minimization).

    Points that do not strictly dominate the reference contribute nothing and
    are dropped. Two objectives use a sort-and-sweep; more objectives slice
    along the last objective recursively.
    """
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        return 0.0
    P = np.atleast_2d(P)
    m = P.shape[1]
    ref = np.full(m, HV_REFERENCE) if reference is None else np.broadcast_to(
        np.asarray(reference, dtype=float), (m,)
    )
    P = _inside(P, ref)
    if P.shape[0] == 0:
        return 0.0
    if m == 1:
        return float(ref[0] - P[:, 0].min())
    return float(_hv_slice(nondominated_filter(P), ref))


def normalized_hypervolume(points, lower, upper, reference: float = HV_REFERENCE) -> float:
    """Hypervolume after normalizing by the front bounds, reference ``1.1`` per axis."""
    P = normalize(points, lower, upper)
    return hypervolume(P, np.full(P.shape[-1], reference))


def pooled_pf_bounds(fronts) -> tuple[np.ndarray, np.ndarray]:
    """Bounds of the non-dominated union of several fronts.

    Used as the reference front when the true Pareto front is unknown.
    """
    fronts = [np.atleast_2d(np.asarray(F, dtype=float)) for F in fronts if np.size(F)]
    if not fronts:
        raise GlpMoeadError("cannot derive bounds from an empty pool of fronts")
    pooled = nondominated_filter(np.vstack(fronts))
    return pooled.min(axis=0), pooled.max(axis=0)


def max_consecutive_gap(front) -> float:
    """Largest Euclidean distance between neighbouring points of a 2-objective
    front sorted by the first objective."""
    F = nondominated_filter(np.asarray(front, dtype=float))
    if F.shape[0] < 2:
        return 0.0
    F = F[np.argsort(F[:, 0], kind="stable")]
    return float(np.max(np.linalg.norm(np.diff(F, axis=0), axis=1)))


BETTER = "better"
WORSE = "worse"
SIMILAR = "similar"


def wilcoxon_rank_sum(a, b, alpha: float = 0.05, maximize: bool = True) -> str:
    """Two-sided rank-sum comparison of ``a`` against ``b``.

    Normal approximation with tie and continuity correction. When significant,
    the medians decide whether ``a`` is better or worse under the metric's
    direction.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < 5 or b.size < 5:
        raise ConfigurationError("rank-sum test needs at least 5 samples per side")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        return SIMILAR
    p = stats.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic").pvalue
    if not p < alpha:
        return SIMILAR
    da, db = np.median(a), np.median(b)
    if da == db:
        # medians tie; fall back to the mean ranks
        ranks = stats.rankdata(pooled)
        da, db = ranks[: a.size].mean(), ranks[a.size :].mean()
    if (da > db) == maximize:
        return BETTER
    return WORSE
