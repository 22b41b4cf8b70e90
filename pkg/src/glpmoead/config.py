"""Experiment configuration: YAML files plus command-line overrides.

A full file::

    runs: 30
    base_seed: 1
    output: results
    workers: 1
    checkpoints: 20
    baseline: GGR
    problems:
      - {name: DTLZ3, m: 2}
      - {name: MOKP, m: 3, instance_seed: 4, budget: 400000}
    algorithms:
      - {name: MOEAD, p: 1}
      - {name: GR, p: 1}
      - {name: GGR, p: 1}
      - {name: GGR, p: 1, T_r: 1, label: GGR-Tr1}

Shorthand for a single cell: ``problem: ZDT1``, ``algorithm: GGR``, ``p: 1``
(``m``, ``algorithm`` and ``p`` may also be lists). ``p`` accepts ``inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import yaml

from .algorithm import STRATEGIES, Variant, default_neighborhood_sizes
from .decomposition import lattice_divisions
from .errors import ConfigurationError, GlpMoeadError
from .problems import FAMILIES
from .scalarization import parse_exponent

DEFAULT_N = {2: 100, 3: 190, 5: 210}
DEFAULT_RUNS = 30
DEFAULT_CHECKPOINTS = 20

TOP_KEYS = {
    "runs", "base_seed", "output", "workers", "checkpoints", "baseline", "problems",
    "algorithms", "problem", "algorithm", "p", "m", "N", "budget", "T_m", "T_r",
    "instance_seed", "scalarizer", "reference",
}
PROBLEM_KEYS = {"name", "m", "N", "budget", "T_m", "T_r", "instance_seed", "instance_file"}
ALGORITHM_KEYS = {"name", "p", "scalarizer", "reference", "T_r", "T_m", "label"}


def default_budget(family: str, m: int) -> int:
    family = family.upper()
    if family.startswith("ZDT"):
        return 25_000
    if family.startswith("DTLZ"):
        return 100_000
    return 200_000 if m <= 2 else 400_000


@dataclass(frozen=True)
class ProblemEntry:
    name: str
    m: int
    N: int
    budget: int
    T_m: int
    T_r: int
    instance_seed: int = 0
    instance_file: str | None = None

    @property
    def key(self) -> str:
        return f"{self.name}_m{self.m}"


@dataclass(frozen=True)
class AlgorithmEntry:
    strategy: str
    p: float
    family: str
    reference: str = "ideal"
    T_r: int | None = None
    T_m: int | None = None
    label: str | None = None

    @property
    def variant(self) -> Variant:
        return Variant.named(self.strategy, self.p, self.family, self.reference)

    @property
    def name(self) -> str:
        return self.label or self.strategy.upper()

    @property
    def p_token(self) -> str:
        return "inf" if math.isinf(self.p) else f"{self.p:g}"


@dataclass(frozen=True)
class ExperimentConfig:
    problems: tuple[ProblemEntry, ...]
    algorithms: tuple[AlgorithmEntry, ...]
    runs: int = DEFAULT_RUNS
    base_seed: int = 0
    output: str = "results"
    workers: int = 1
    checkpoints: int = DEFAULT_CHECKPOINTS
    baseline: str = "ggr"


def _as_list(v):
    if v is None:
        return []
    return list(v) if isinstance(v, (list, tuple)) else [v]


def _int(value, what: str) -> int:
    if isinstance(value, bool) or value is None:
        raise ConfigurationError(f"{what} must be an integer, got {value!r}")
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{what} must be an integer, got {value!r}") from None
    if out != value and not isinstance(value, str):
        raise ConfigurationError(f"{what} must be an integer, got {value!r}")
    return out


def _check_keys(d: dict, allowed: set, where: str):
    unknown = set(d) - allowed
    if unknown:
        raise ConfigurationError(f"unknown key {sorted(unknown)[0]!r} in {where}")


def _problem(raw, defaults: dict) -> ProblemEntry:
    if isinstance(raw, str):
        raw = {"name": raw}
    if not isinstance(raw, dict):
        raise ConfigurationError(f"cannot read problem entry {raw!r}")
    _check_keys(raw, PROBLEM_KEYS, "problem entry")
    name = str(raw.get("name", "")).upper()
    if name not in FAMILIES:
        raise ConfigurationError(f"unknown problem {raw.get('name')!r}")
    m = _int(raw.get("m", defaults.get("m", 2)), "m")
    if name.startswith("ZDT") and m != 2:
        raise ConfigurationError(f"{name} is bi-objective, got m={m}")
    if "N" in raw or "N" in defaults:
        N = _int(raw.get("N", defaults.get("N")), "N")
    elif m in DEFAULT_N:
        N = DEFAULT_N[m]
    else:
        raise ConfigurationError(f"no default population size for m={m}; set N")
    lattice_divisions(m, N)
    T_m, T_r = default_neighborhood_sizes(N)
    T_m = _int(raw.get("T_m", defaults.get("T_m", T_m)), "T_m")
    T_r = _int(raw.get("T_r", defaults.get("T_r", T_r)), "T_r")
    budget = _int(raw.get("budget", defaults.get("budget", default_budget(name, m))), "budget")
    return ProblemEntry(
        name=name,
        m=m,
        N=N,
        budget=budget,
        T_m=T_m,
        T_r=T_r,
        instance_seed=_int(raw.get("instance_seed", defaults.get("instance_seed", 0)), "instance_seed"),
        instance_file=raw.get("instance_file"),
    )


def _algorithms(raw, defaults: dict) -> list[AlgorithmEntry]:
    if isinstance(raw, str):
        raw = {"name": raw}
    if not isinstance(raw, dict):
        raise ConfigurationError(f"cannot read algorithm entry {raw!r}")
    _check_keys(raw, ALGORITHM_KEYS, "algorithm entry")
    token = str(raw.get("name", "")).lower().replace("moea/d-", "").replace("moead-", "")
    if token in ("moea/d", "vanilla"):
        token = "moead"
    if token not in STRATEGIES:
        raise ConfigurationError(f"unknown algorithm {raw.get('name')!r}")
    ps = _as_list(raw.get("p", defaults.get("p", 1)))
    if not ps:
        raise ConfigurationError("algorithm entry needs an exponent p")
    out = []
    for p in ps:
        p = parse_exponent(p)
        family = raw.get("scalarizer", defaults.get("scalarizer"))
        family = ("glp" if token == "ggr" else "lp") if family is None else str(family).lower()
        if family not in ("lp", "glp"):
            raise ConfigurationError(f"unknown scalarizer {family!r}")
        t_r = raw.get("T_r")
        t_m = raw.get("T_m")
        out.append(
            AlgorithmEntry(
                strategy=token,
                p=p,
                family=family,
                reference=str(raw.get("reference", defaults.get("reference", "ideal"))),
                T_r=None if t_r is None else _int(t_r, "T_r"),
                T_m=None if t_m is None else _int(t_m, "T_m"),
                label=raw.get("label") or (None if t_r is None else f"{token.upper()}-Tr{t_r}"),
            )
        )
    return out


def build_config(data: dict, overrides: dict | None = None) -> ExperimentConfig:
    """Resolve a parsed mapping (file contents, then ``overrides``) into a config."""
    data = dict(data or {})
    for k, v in (overrides or {}).items():
        if v is not None:
            data[k] = v
            # a flag-level problem/algorithm replaces the file's lists
            if k in ("problem", "algorithm"):
                data.pop(k + "s", None)
    _check_keys(data, TOP_KEYS, "configuration")
    defaults = {k: data[k] for k in ("m", "N", "budget", "T_m", "T_r", "instance_seed", "p",
                                     "scalarizer", "reference") if k in data}

    problems_raw = _as_list(data.get("problems")) or _as_list(data.get("problem"))
    if not problems_raw:
        raise ConfigurationError("no problem given")
    ms = _as_list(data.get("m")) or [None]
    problems = []
    for raw in problems_raw:
        if isinstance(raw, str) and len(ms) > 1:
            for m in ms:
                problems.append(_problem({"name": raw, "m": m}, {k: v for k, v in defaults.items() if k != "m"}))
        else:
            d = {k: v for k, v in defaults.items() if k != "m"}
            if ms[0] is not None:
                d["m"] = ms[0]
            problems.append(_problem(raw, d))

    algorithms_raw = _as_list(data.get("algorithms")) or _as_list(data.get("algorithm"))
    if not algorithms_raw:
        raise ConfigurationError("no algorithm given")
    algorithms = []
    for raw in algorithms_raw:
        algorithms.extend(_algorithms(raw, defaults))

    runs = _int(data.get("runs", DEFAULT_RUNS), "runs")
    if runs < 1:
        raise ConfigurationError("runs must be positive")
    workers = _int(data.get("workers", 1), "workers")
    checkpoints = _int(data.get("checkpoints", DEFAULT_CHECKPOINTS), "checkpoints")
    if workers < 1 or checkpoints < 1:
        raise ConfigurationError("workers and checkpoints must be positive")
    baseline = str(data.get("baseline", "ggr")).lower()
    return ExperimentConfig(
        problems=tuple(problems),
        algorithms=tuple(algorithms),
        runs=runs,
        base_seed=_int(data.get("base_seed", 0), "base_seed"),
        output=str(data.get("output", "results")),
        workers=workers,
        checkpoints=checkpoints,
        baseline=baseline,
    )


def parse_config(source=None, overrides: dict | None = None) -> ExperimentConfig:
    """Read a YAML file (path), YAML text, or mapping, then apply flag overrides."""
    if source is None:
        data = {}
    elif isinstance(source, dict):
        data = source
    else:
        path = Path(source)
        try:
            text = path.read_text() if path.exists() else str(source)
        except OSError as exc:
            raise ConfigurationError(f"cannot read {source}: {exc}") from None
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"invalid YAML: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigurationError("configuration must be a mapping")
    try:
        return build_config(data, overrides)
    except ConfigurationError:
        raise
    except (GlpMoeadError, TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc)) from None


def with_output(config: ExperimentConfig, output) -> ExperimentConfig:
    return replace(config, output=str(output))


__all__ = [
    "AlgorithmEntry",
    "ExperimentConfig",
    "ProblemEntry",
    "build_config",
    "default_budget",
    "parse_config",
    "with_output",
]
