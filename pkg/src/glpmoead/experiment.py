"""Experiment sweeps: runs every (problem, algorithm, seed) cell, scores them and
writes CSV files.

``results.csv`` has one row per run::

    problem,m,algorithm,strategy,scalarizer,p,N,T_m,T_r,seed,evaluations,truncated,status,hv,hv_01,...,hv_C

``hv_k`` is the normalized hypervolume of the population after
``ceil(k * budget / C)`` evaluations, ``C`` being the configured checkpoint
count (20 by default). ``summary.csv`` has one row per (problem, m, p,
algorithm)::

    problem,m,p,algorithm,runs,mean,std,median,rank,mark

Ranks are within the (problem, m, p) cell, best mean first. The mark compares
an algorithm against the baseline strategy of the same cell: ``+`` better,
``-`` worse, ``=`` similar; empty for the baseline itself and for cells with
fewer than 5 runs.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algorithm import RunConfig, run
from .config import AlgorithmEntry, ExperimentConfig, ProblemEntry
from .errors import PFUnavailableError
from .metrics import BETTER, WORSE, normalized_hypervolume, pooled_pf_bounds, wilcoxon_rank_sum
from .problems import COMBINATORIAL_FAMILIES, generate_instance, load_instance, make_problem, save_instance

log = logging.getLogger(__name__)

RESULT_FIELDS = [
    "problem", "m", "algorithm", "strategy", "scalarizer", "p", "N", "T_m", "T_r", "seed",
    "evaluations", "truncated", "status", "hv",
]
SUMMARY_FIELDS = ["problem", "m", "p", "algorithm", "runs", "mean", "std", "median", "rank", "mark"]
MIN_RUNS_FOR_MARKS = 5


def result_fields(checkpoints: int) -> list[str]:
    return RESULT_FIELDS + [f"hv_{k:02d}" for k in range(1, checkpoints + 1)]


@dataclass
class _Task:
    problem: ProblemEntry
    algorithm: AlgorithmEntry
    instance: object
    seed: int
    checkpoints: int


@dataclass
class _Outcome:
    final: np.ndarray | None
    snapshots: list[np.ndarray]
    evaluations: int
    truncated: bool
    error: str | None = None


def _run_task(task: _Task) -> _Outcome:
    try:
        pe, ae = task.problem, task.algorithm
        problem = make_problem(pe.name, pe.m, instance=task.instance)
        config = RunConfig(
            problem=problem,
            variant=ae.variant,
            N=pe.N,
            max_evaluations=pe.budget,
            seed=task.seed,
            T_m=pe.T_m if ae.T_m is None else ae.T_m,
            T_r=pe.T_r if ae.T_r is None else ae.T_r,
            checkpoints=task.checkpoints,
        )
        result = run(config)
        return _Outcome(
            result.population.F.copy(), [F for _, F in result.snapshots], result.evaluations, result.truncated
        )
    except Exception as exc:  # recorded per cell, the sweep goes on
        return _Outcome(None, [], 0, False, f"{type(exc).__name__}: {exc}")


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _instance_for(entry: ProblemEntry, out_dir: Path | None):
    if entry.name not in COMBINATORIAL_FAMILIES:
        return None
    if entry.instance_file:
        return load_instance(entry.instance_file)
    inst = generate_instance(entry.name, entry.m, entry.instance_seed)
    if out_dir is not None:
        path = out_dir / "instances" / f"{entry.name}_m{entry.m}_seed{entry.instance_seed}.txt"
        path.parent.mkdir(parents=True, exist_ok=True)
        save_instance(inst, path)
    return inst


def run_experiment(config: ExperimentConfig, write: bool = True) -> tuple[list[dict], list[dict]]:
    """Run the whole sweep; returns ``(result_rows, summary_rows)``.

    Run ``i`` of every cell uses seed ``base_seed + i``. Knapsack and TSP
    instances are generated once per problem entry and shared by all runs.
    """
    out_dir = Path(config.output) if write else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    instances = [_instance_for(pe, out_dir) for pe in config.problems]
    tasks = [
        _Task(pe, ae, inst, config.base_seed + i, config.checkpoints)
        for pe, inst in zip(config.problems, instances)
        for ae in config.algorithms
        for i in range(config.runs)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(_run_task, tasks, chunksize=1))
    else:
        outcomes = [_run_task(t) for t in tasks]

    rows: list[dict] = []
    per_problem = len(config.algorithms) * config.runs
    for pi, pe in enumerate(config.problems):
        block = list(zip(tasks[pi * per_problem : (pi + 1) * per_problem],
                         outcomes[pi * per_problem : (pi + 1) * per_problem]))
        lower, upper = _bounds(pe, instances[pi], [o.final for _, o in block if o.final is not None])
        for task, outcome in block:
            if outcome.error is not None:
                log.warning("%s m=%d %s seed %d failed: %s", pe.name, pe.m, task.algorithm.name,
                            task.seed, outcome.error)
            rows.append(_result_row(task, outcome, lower, upper, config.checkpoints))

    summary = stats_summary(rows, config.baseline)
    if out_dir is not None:
        (out_dir / "results.csv").write_text(_to_csv(rows, result_fields(config.checkpoints)))
        (out_dir / "summary.csv").write_text(_to_csv(summary, SUMMARY_FIELDS))
    return rows, summary


def _bounds(pe: ProblemEntry, instance, finals):
    try:
        return make_problem(pe.name, pe.m, instance=instance).pf_bounds()
    except PFUnavailableError:
        if not finals:
            return None, None
        return pooled_pf_bounds(finals)


def _hv(F, lower, upper) -> float:
    if lower is None or np.any(upper <= lower):
        return math.nan
    return normalized_hypervolume(F, lower, upper)


def _result_row(task: _Task, outcome: _Outcome, lower, upper, checkpoints: int) -> dict:
    ae, pe = task.algorithm, task.problem
    row = {
        "problem": pe.name,
        "m": pe.m,
        "algorithm": ae.name,
        "strategy": ae.strategy,
        "scalarizer": ae.family,
        "p": ae.p_token,
        "N": pe.N,
        "T_m": pe.T_m if ae.T_m is None else ae.T_m,
        "T_r": pe.T_r if ae.T_r is None else ae.T_r,
        "seed": task.seed,
        "evaluations": outcome.evaluations,
        "truncated": int(outcome.truncated),
        "status": "ok" if outcome.error is None else outcome.error,
        "hv": math.nan if outcome.final is None else _hv(outcome.final, lower, upper),
    }
    hvs = [_hv(F, lower, upper) for F in outcome.snapshots]
    hvs += [math.nan] * (checkpoints - len(hvs))
    for k, v in enumerate(hvs, start=1):
        row[f"hv_{k:02d}"] = v
    return row


def stats_summary(rows: list[dict], baseline: str = "ggr") -> list[dict]:
    """Mean, std, median, rank and baseline mark per (problem, m, p, algorithm).

    Failed runs (NaN hypervolume) are left out of the statistics.
    """
    cells: dict[tuple, dict[str, list[float]]] = {}
    strategy: dict[str, str] = {}
    for r in rows:
        key = (r["problem"], r["m"], r["p"])
        cells.setdefault(key, {}).setdefault(r["algorithm"], [])
        strategy[r["algorithm"]] = r.get("strategy", r["algorithm"]).lower()
        if not math.isnan(r["hv"]):
            cells[key][r["algorithm"]].append(float(r["hv"]))

    out = []
    for (problem, m, p), algos in cells.items():
        names = list(algos)
        means = [float(np.mean(algos[a])) if algos[a] else math.nan for a in names]
        # rank by mean, best first, ties to the earlier algorithm
        order = sorted(range(len(names)), key=lambda i: (-means[i] if not math.isnan(means[i]) else math.inf, i))
        rank = {names[i]: r + 1 for r, i in enumerate(order)}
        base = next((a for a in names if strategy[a] == baseline.lower()), None)
        for a, mean in zip(names, means):
            vals = algos[a]
            mark = ""
            if base is not None and a != base and len(vals) >= MIN_RUNS_FOR_MARKS and len(algos[base]) >= MIN_RUNS_FOR_MARKS:
                verdict = wilcoxon_rank_sum(vals, algos[base])
                mark = "+" if verdict == BETTER else "-" if verdict == WORSE else "="
            out.append({
                "problem": problem,
                "m": m,
                "p": p,
                "algorithm": a,
                "runs": len(vals),
                "mean": mean,
                "std": float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0,
                "median": float(np.median(vals)) if vals else math.nan,
                "rank": rank[a],
                "mark": mark,
            })
    return out


def _to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for r in rows:
        writer.writerow([_fmt(r[f]) for f in fields])
    return buf.getvalue()
