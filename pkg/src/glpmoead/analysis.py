"""Preference regions of scalarized subproblems.

The preference region of subproblem ``j`` is the set of objective vectors
that score lower on ``j`` than on every other subproblem. These helpers
label sampled objective vectors by region and check whether each
subproblem's direction vector actually runs through its own region.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .decomposition import Decomposition
from .errors import NumericError, ParameterError
from .scalarization import Scalarizer

SHELL = (1.0, 2.0)
SCALES = (1.0, 1.5, 2.0)


def sample_shell(m: int, count: int, rng: np.random.Generator, r_min: float = SHELL[0],
                 r_max: float = SHELL[1]) -> np.ndarray:
    """Points of the non-negative orthant with ``r_min <= ||f||_2 <= r_max``.

    Directions are uniform on the orthant part of the unit sphere (absolute
    values of Gaussian vectors); radii are uniform on ``[r_min, r_max]``.
    """
    if not 0 < r_min < r_max:
        raise ParameterError(f"need 0 < r_min < r_max, got {r_min}, {r_max}")
    g = np.abs(rng.standard_normal((count, m)))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero Gaussian vector has probability zero but would divide by zero
    norms[norms == 0] = 1.0
    radius = rng.uniform(r_min, r_max, size=(count, 1))
    return g / norms * radius


def region_map(samples, dec: Decomposition, scalarizer: Scalarizer, z=None,
               chunk: int = 20000) -> np.ndarray:
    """Subproblem index each sample is matched to (lowest scalarized value)."""
    F = np.atleast_2d(np.asarray(samples, dtype=float))
    z = np.zeros(F.shape[1]) if z is None else np.asarray(z, dtype=float)
    W = dec.weights_eff
    labels = np.empty(F.shape[0], dtype=int)
    for start in range(0, F.shape[0], chunk):
        block = F[start : start + chunk, None, :]
        values = scalarizer(block, W[None, :, :], z, scale=dec.h[None, :])
        if not np.all(np.isfinite(values)):
            raise NumericError("non-finite scalarization value in region map")
        labels[start : start + chunk] = np.argmin(values, axis=1)
    return labels


def write_region_tsv(path, samples, labels) -> None:
    """Columns ``f_1 .. f_m`` and ``label``, tab separated, one sample per row."""
    F = np.asarray(samples, dtype=float)
    header = "\t".join([f"f_{i + 1}" for i in range(F.shape[1])] + ["label"])
    lines = [header]
    for f, k in zip(F, labels):
        lines.append("\t".join([repr(float(v)) for v in f] + [str(int(k))]))
    Path(path).write_text("\n".join(lines) + "\n")


def continuous_minimizer_lp(f, p: float) -> np.ndarray:
    """Weight on the continuous simplex minimizing the Lp value of ``f``.

    ``w_i`` is proportional to ``f_i ** (-p / (p - 1))``; for ``p = inf`` the
    exponent tends to ``-1``. ``p = 1`` has no such interior minimizer.
    """
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0):
        raise ParameterError("objective vector must be strictly positive")
    p = float(p)
    if p <= 1.0:
        raise ParameterError("the interior minimizer only exists for p > 1")
    exponent = -1.0 if math.isinf(p) else -p / (p - 1.0)
    # work in logs so large exponents stay finite
    log_w = exponent * np.log(f)
    w = np.exp(log_w - log_w.max())
    return w / w.sum()


def passes_through(dec: Decomposition, scalarizer: Scalarizer, j: int,
                   scales=SCALES) -> bool:
    """Whether points on subproblem ``j``'s direction vector are matched to ``j``.

    The direction vector is placed on the shell at each radius in ``scales``.
    """
    lam = dec.lambdas[j]
    unit = lam / np.linalg.norm(lam)
    F = np.outer(scales, unit)
    return bool(np.all(region_map(F, dec, scalarizer) == j))


def passthrough_fraction(dec: Decomposition, scalarizer: Scalarizer, scales=SCALES) -> float:
    """Share of interior subproblems whose direction vector passes through their region."""
    interior = dec.interior
    if interior.size == 0:
        raise ParameterError("no interior subproblems")
    unit = dec.lambdas[interior] / np.linalg.norm(dec.lambdas[interior], axis=1, keepdims=True)
    ok = np.ones(interior.size, dtype=bool)
    for c in scales:
        ok &= region_map(c * unit, dec, scalarizer) == interior
    return float(ok.mean())


def verify_region_properties(samples: int = 100_000, seed: int = 0) -> list[tuple[str, bool, str]]:
    """Numerical checks of the preference-region properties.

    Returns ``(name, passed, detail)`` tuples:

    * L1: every shell sample of an ``H = 6`` lattice (m = 2 and 3) is matched
      to an extreme boundary subproblem.
    * L2 / Tchebycheff contrast on the ``m = 2, H = 99`` lattice: few L2
      direction vectors pass through their regions, the central one does,
      all Tchebycheff ones do.
    * GLp: every interior direction vector passes, for p in 1, 1.5, 2, 3, 10
      and inf, on the ``m = 2, H = 99`` and ``m = 3, H = 18`` lattices.
    """
    from .decomposition import decompose, simplex_lattice_weights

    def lattice(m, H):
        return decompose(simplex_lattice_weights(m, H), 2, 1)

    rng = np.random.default_rng(seed)
    report = []
    for m in (2, 3):
        dec = lattice(m, 6)
        labels = region_map(sample_shell(m, samples, rng), dec, Scalarizer("lp", 1.0))
        used = set(np.unique(labels).tolist())
        report.append((f"L1 regions only at extreme subproblems (m={m}, H=6)",
                       used <= set(dec.extreme.tolist()), f"labels used: {sorted(used)}"))

    dec = lattice(2, 99)
    frac = passthrough_fraction(dec, Scalarizer("lp", 2.0))
    report.append(("L2 pass-through fraction below 0.2 (m=2, H=99)", frac < 0.2, f"fraction {frac:.4f}"))
    for m, H in ((2, 98), (3, 18)):
        d = lattice(m, H)
        centre = int(np.argmin(np.linalg.norm(d.weights - 1.0 / m, axis=1)))
        ok = np.allclose(d.weights[centre], 1.0 / m) and passes_through(d, Scalarizer("lp", 2.0), centre)
        report.append((f"L2 central direction passes (m={m}, H={H})", bool(ok), f"weight {d.weights[centre]}"))
    frac = passthrough_fraction(dec, Scalarizer("lp", math.inf))
    report.append(("Tchebycheff pass-through fraction is 1 (m=2, H=99)", frac == 1.0, f"fraction {frac:.4f}"))

    for m, H in ((2, 99), (3, 18)):
        d = dec if (m, H) == (2, 99) else lattice(m, H)
        for p in (1.0, 1.5, 2.0, 3.0, 10.0, math.inf):
            s = Scalarizer("glp", p)
            frac = passthrough_fraction(d, s)
            report.append((f"{s.label} pass-through fraction is 1 (m={m}, H={H})", frac == 1.0,
                           f"fraction {frac:.4f}"))
    return report
