"""Command line entry point.

Subcommands::

    glpmoead run      --config exp.yaml [--problem DTLZ3 --m 2 --algorithm GGR --p 1 ...]
    glpmoead regions  --m 2 --H 6 --scalarizer lp --p 1 --out regions.tsv
    glpmoead verify
    glpmoead hv       front.txt (--problem ZDT1 | --lower 0 0 --upper 1 1) [--ref 1.1]
    glpmoead gen      --family MOKP --m 2 --seed 3 --out mokp.txt
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .analysis import region_map, sample_shell, verify_region_properties, write_region_tsv
from .config import parse_config
from .decomposition import decompose, simplex_lattice_weights
from .errors import GlpMoeadError
from .experiment import SUMMARY_FIELDS, run_experiment
from .metrics import HV_REFERENCE, hypervolume, normalized_hypervolume
from .problems import generate_instance, make_problem, save_instance
from .scalarization import Scalarizer, parse_exponent

# flag name -> config key
RUN_OVERRIDES = {
    "problem": "problem",
    "m": "m",
    "algorithm": "algorithm",
    "p": "p",
    "runs": "runs",
    "seed": "base_seed",
    "N": "N",
    "budget": "budget",
    "T_m": "T_m",
    "T_r": "T_r",
    "output": "output",
    "workers": "workers",
    "checkpoints": "checkpoints",
    "baseline": "baseline",
}


def _run(args) -> int:
    overrides = {RUN_OVERRIDES[k]: getattr(args, k) for k in RUN_OVERRIDES}
    for key in ("m", "algorithm", "p"):
        if overrides[key] is not None and len(overrides[key]) == 1:
            overrides[key] = overrides[key][0]
    config = parse_config(args.config, overrides)
    _, summary = run_experiment(config)
    print("\t".join(SUMMARY_FIELDS))
    for row in summary:
        print("\t".join(f"{row[f]:.6g}" if isinstance(row[f], float) else str(row[f]) for f in SUMMARY_FIELDS))
    print(f"results written to {config.output}", file=sys.stderr)
    return 0


def _regions(args) -> int:
    dec = decompose(simplex_lattice_weights(args.m, args.H), 2, 1)
    scalarizer = Scalarizer(args.scalarizer, parse_exponent(args.p))
    samples = sample_shell(args.m, args.samples, np.random.default_rng(args.seed))
    labels = region_map(samples, dec, scalarizer)
    write_region_tsv(args.out, samples, labels)
    used = np.unique(labels)
    print(f"{scalarizer.label}: {used.size} of {len(dec)} subproblems own samples: {used.tolist()}")
    return 0


def _verify(args) -> int:
    failed = 0
    for name, ok, detail in verify_region_properties(args.samples, args.seed):
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
        failed += not ok
    return 1 if failed else 0


def _hv(args) -> int:
    F = np.atleast_2d(np.loadtxt(args.front, delimiter="," if args.front.endswith(".csv") else None))
    if args.problem:
        lower, upper = make_problem(args.problem, F.shape[1]).pf_bounds()
    elif args.lower is not None and args.upper is not None:
        lower, upper = np.array(args.lower), np.array(args.upper)
    else:
        lower = None
    if lower is None:
        value = hypervolume(F, np.full(F.shape[1], args.ref))
    else:
        value = normalized_hypervolume(F, lower, upper, args.ref)
    print(repr(value))
    return 0


def _gen(args) -> int:
    inst = generate_instance(args.family, args.m, args.seed, args.size)
    save_instance(inst, args.out)
    print(f"{args.family.upper()} m={inst.m} n={inst.n} seed={args.seed} -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glpmoead", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment sweep")
    p.add_argument("--config", help="YAML file (or inline YAML)")
    p.add_argument("--problem")
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--algorithm", nargs="+")
    p.add_argument("--p", nargs="+")
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int, help="base seed; run i uses seed + i")
    p.add_argument("--N", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--T_m", "--tm", dest="T_m", type=int)
    p.add_argument("--T_r", "--tr", dest="T_r", type=int)
    p.add_argument("--output")
    p.add_argument("--workers", type=int)
    p.add_argument("--checkpoints", type=int)
    p.add_argument("--baseline")
    p.set_defaults(func=_run)

    p = sub.add_parser("regions", help="write a preference region map as TSV")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--H", type=int, default=6)
    p.add_argument("--scalarizer", choices=("lp", "glp"), default="lp")
    p.add_argument("--p", default="1")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="regions.tsv")
    p.set_defaults(func=_regions)

    p = sub.add_parser("verify", help="numerical checks of the preference region results")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_verify)

    p = sub.add_parser("hv", help="hypervolume of a front file (one point per row)")
    p.add_argument("front")
    p.add_argument("--problem", help="normalize by this problem's Pareto front bounds")
    p.add_argument("--lower", type=float, nargs="+")
    p.add_argument("--upper", type=float, nargs="+")
    p.add_argument("--ref", type=float, default=HV_REFERENCE)
    p.set_defaults(func=_hv)

    p = sub.add_parser("gen", help="generate a knapsack or TSP instance file")
    p.add_argument("--family", required=True, choices=("MOKP", "MOTSP", "mokp", "motsp"))
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, help="items or cities (250 / 60 by default)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (GlpMoeadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
