"""Command-line front end.

Subcommands: ``train`` (one algorithm, averaged runs, CSV curve), ``bench``
(all algorithms side by side), ``oracle-check`` (closed-form updates against
the brute-force solvers), ``bound-check`` (cumulative-loss guarantees across
seeds; exits 2 on any violation), ``gen-intervals`` (write an interval-labeled
stream).  Every command writes byte-deterministic output for a fixed
(config, seed) pair and a JSON manifest describing exactly what ran.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .data import (IntervalPolicy, PreparedTable, assemble_dataset, builtin_spec,
                   data_dir, load_spec_toml, prepare_letor, prepare_tabular,
                   synthetic_table)
from .harness import (ALGORITHMS, RunConfig, bound_check_suite, run_experiment)
from .oracle import oracle_pa, oracle_pa1, oracle_pa2, random_trial, trial_objective
from .updates import update_pa, update_pa1, update_pa2

OBJECTIVE_TOL = 1e-8
PARAMETER_TOL = 1e-6


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_curve_csv(path, mean, stderr) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("trial,mean_avg_mae,stderr_avg_mae\n")
        for t in range(len(mean)):
            fh.write(f"{t + 1},{_fmt(mean[t])},{_fmt(stderr[t])}\n")


def write_manifest(path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algo", choices=ALGORITHMS, default="pa1")
    parser.add_argument("--C", type=float, default=1.0,
                        help="aggressiveness for pa1/pa2 (default 1.0)")
    parser.add_argument("--trials", type=int, default=None,
                        help="online trials per run")
    parser.add_argument("--runs", type=int, default=None,
                        help="independent seeded runs to average")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--interval-fraction", type=float, default=0.0,
                        help="fraction of instances given interval labels")
    parser.add_argument("--dataset", default="synthetic",
                        help="builtin name (abalone/california/parkinson/mslr), "
                             "'synthetic', or a dataset spec .toml path")
    parser.add_argument("--metric", choices=("exact", "interval"), default="exact")
    parser.add_argument("--out", default=None, help="output path")
    parser.add_argument("--data-dir", default=None,
                        help="directory holding dataset files "
                             "(default $INTERVAL_RANK_DATA or ./data)")


def _resolve_table(args) -> PreparedTable:
    name = args.dataset
    if name in ("synthetic", "synthetic-noisy"):
        return synthetic_table(seed=args.seed)
    if name == "mslr":
        path = data_dir(args.data_dir) / "mslr_fold1.txt"
        return prepare_letor(path, max_rows=20000, seed=args.seed)
    if name in ("abalone", "california", "parkinson"):
        return prepare_tabular(builtin_spec(name, args.data_dir))
    if name.endswith(".toml"):
        return prepare_tabular(load_spec_toml(name))
    raise SystemExit(f"error: unknown dataset {name!r}; pass a builtin name, "
                     f"'synthetic', or a .toml spec file")


def _dataset_payload(table: PreparedTable) -> dict:
    return {
        "name": table.name,
        "hash": table.source_hash,
        "rows": len(table.pairs),
        "classes": table.num_classes,
        "warnings": table.warnings,
    }


def _seed_payload(config: RunConfig) -> dict:
    return {
        "root": config.seed,
        "runs": config.runs,
        "protocol": "PCG64; SeedSequence(root).spawn(runs); each run spawns "
                    "(interval-labeling, trial-sampling) streams",
    }


def cmd_train(args) -> int:
    config = RunConfig(
        algorithm=args.algo, C=args.C,
        trials=args.trials if args.trials is not None else 7000,
        runs=args.runs if args.runs is not None else 100,
        seed=args.seed, interval_fraction=args.interval_fraction,
        dataset=args.dataset, metric=args.metric)
    table = _resolve_table(args)
    result = run_experiment(config, table)
    out = Path(args.out or f"{args.algo}-train.csv")
    write_curve_csv(out, result.mean_curve, result.stderr_curve)
    write_manifest(out.with_suffix(".manifest.json"), {
        "command": "train",
        "config": config.as_dict(),
        "dataset": _dataset_payload(table),
        "seeds": _seed_payload(config),
        "final_mean_avg_mae": result.final_mae,
    })
    print(f"{config.algorithm}: final average MAE {result.final_mae:.4f} "
          f"over {config.runs} runs -> {out}")
    return 0


def cmd_bench(args) -> int:
    out_dir = Path(args.out or "bench-out")
    out_dir.mkdir(parents=True, exist_ok=True)
    table = _resolve_table(args)
    summary = {}
    for algo in ALGORITHMS:
        config = RunConfig(
            algorithm=algo, C=args.C,
            trials=args.trials if args.trials is not None else 7000,
            runs=args.runs if args.runs is not None else 100,
            seed=args.seed, interval_fraction=args.interval_fraction,
            dataset=args.dataset, metric=args.metric)
        result = run_experiment(config, table)
        write_curve_csv(out_dir / f"{algo}.csv", result.mean_curve,
                        result.stderr_curve)
        summary[algo] = {"config": config.as_dict(),
                         "seeds": _seed_payload(config),
                         "final_mean_avg_mae": result.final_mae}
        print(f"{algo}: final average MAE {result.final_mae:.4f}")
    write_manifest(out_dir / "manifest.json", {
        "command": "bench",
        "dataset": _dataset_payload(table),
        "results": summary,
    })
    return 0


def oracle_comparison(trials: int, seed: int) -> dict:
    """Worst closed-form vs brute-force deviations over random trials."""
    rng = np.random.default_rng(seed)
    worst = {v: {"objective": 0.0, "parameters": 0.0} for v in ("pa", "pa1", "pa2")}
    for _ in range(trials):
        model, inst = random_trial(rng)
        C = float(rng.uniform(0.05, 4.0))
        for variant in ("pa", "pa1", "pa2"):
            updated = model.copy()
            if variant == "pa":
                update_pa(updated, inst)
                reference = oracle_pa(model, inst)
            elif variant == "pa1":
                update_pa1(updated, inst, C)
                reference = oracle_pa1(model, inst, C)
            else:
                update_pa2(updated, inst, C)
                reference = oracle_pa2(model, inst, C)
            closed = trial_objective(model, updated, inst, variant,
                                     C if variant != "pa" else None)
            obj_dev = abs(closed - reference.objective)
            par_dev = max(
                float(np.max(np.abs(updated.weights - reference.weights))),
                float(np.max(np.abs(updated.thresholds - reference.thresholds))))
            worst[variant]["objective"] = max(worst[variant]["objective"], obj_dev)
            worst[variant]["parameters"] = max(worst[variant]["parameters"], par_dev)
    return worst


def cmd_oracle_check(args) -> int:
    trials = args.trials if args.trials is not None else 1000
    worst = oracle_comparison(trials, args.seed)
    ok = True
    for variant, devs in worst.items():
        passed = (devs["objective"] <= OBJECTIVE_TOL
                  and devs["parameters"] <= PARAMETER_TOL)
        ok = ok and passed
        print(f"{variant}: max objective dev {devs['objective']:.3e}, "
              f"max parameter dev {devs['parameters']:.3e} "
              f"[{'ok' if passed else 'FAIL'}]")
    if args.out:
        write_manifest(args.out, {"command": "oracle-check", "trials": trials,
                                  "seed": args.seed, "deviations": worst,
                                  "passed": ok})
    return 0 if ok else 1


def cmd_bound_check(args) -> int:
    runs = args.runs if args.runs is not None else 20
    trials = args.trials if args.trials is not None else 500
    table = _resolve_table(args)
    seeds = [args.seed + i for i in range(runs)]
    fraction = args.interval_fraction if args.interval_fraction else 0.5
    reports = bound_check_suite(table, seeds, trials=trials, C=args.C,
                                interval_fraction=fraction)
    violations = [r for r in reports if not r.satisfied]
    for r in reports:
        print(f"{r.variant} ({r.case}): measured {r.measured:.4f} "
              f"<= bound {r.bound:.4f} [{'ok' if r.satisfied else 'VIOLATED'}]")
    write_manifest(args.out or "bound-check.manifest.json", {
        "command": "bound-check",
        "dataset": _dataset_payload(table),
        "C": args.C,
        "trials": trials,
        "seeds": seeds,
        "reports": [r.as_dict() for r in reports],
        "violations": len(violations),
    })
    return 2 if violations else 0


def cmd_gen_intervals(args) -> int:
    table = _resolve_table(args)
    policy = IntervalPolicy(fraction=args.interval_fraction, seed=args.seed)
    ds = assemble_dataset(table, policy, np.random.default_rng(args.seed))
    out = Path(args.out or "intervals.csv")
    dim = ds.instances[0].features.shape[0]
    with open(out, "w", newline="") as fh:
        cols = [f"x{i + 1}" for i in range(dim)] + ["exact_label", "y_l", "y_r"]
        fh.write(",".join(cols) + "\n")
        for inst in ds.instances:
            values = [_fmt(v) for v in inst.features]
            values += [str(inst.exact_label), str(inst.y_l), str(inst.y_r)]
            fh.write(",".join(values) + "\n")
    write_manifest(out.with_suffix(".manifest.json"), {
        "command": "gen-intervals",
        "dataset": _dataset_payload(table),
        "interval_fraction": args.interval_fraction,
        "seed": args.seed,
        "rows": len(ds.instances),
    })
    print(f"wrote {len(ds.instances)} labeled instances -> {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interval-rank",
        description="Online passive-aggressive ordinal ranking from exact or "
                    "interval labels")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler, text in (
            ("train", cmd_train, "run one algorithm and write its MAE curve"),
            ("bench", cmd_bench, "run every algorithm side by side"),
            ("oracle-check", cmd_oracle_check,
             "compare closed-form updates against brute-force solutions"),
            ("bound-check", cmd_bound_check,
             "evaluate cumulative-loss guarantees across seeds"),
            ("gen-intervals", cmd_gen_intervals,
             "write an interval-labeled stream as CSV")):
        p = sub.add_parser(name, help=text)
        _add_common(p)
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
