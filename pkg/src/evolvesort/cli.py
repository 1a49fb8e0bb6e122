"""Command-line front door: single runs, sweeps, reproduction presets, and
the self-verification battery.

Data goes to files; standard output carries one-line human summaries only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algorithms import AlgorithmKind
from .model import StartConfig
from .runner import (
    PRESET_NAMES,
    AdversaryKind,
    ExperimentConfig,
    reproduce,
    run_sweep,
)
from .verify import run_all

ENV_OUT = "EVOLVESORT_OUT"


def _default_out() -> str:
    return os.environ.get(ENV_OUT, "evolvesort-out")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="list size (>= 2)")
    p.add_argument(
        "--algo",
        choices=[k.value for k in AlgorithmKind],
        help="sorting algorithm",
    )
    p.add_argument(
        "--adversary",
        choices=[a.value for a in AdversaryKind],
        help="mutation process (default uniform)",
    )
    p.add_argument("--r", type=int, help="swaps per comparison (uniform adversary)")
    p.add_argument(
        "--start",
        choices=[s.value for s in StartConfig],
        help="start configuration (default sorted)",
    )
    p.add_argument("--seed", type=int, help="master seed (default 0)")
    p.add_argument("--max-steps", type=int, help="comparisons to run (default n^2)")
    p.add_argument(
        "--sample-interval", type=int, help="comparisons between samples (default n/20)"
    )
    p.add_argument("--reps", type=int, help="repetitions with seeds seed..seed+reps-1")
    p.add_argument("--config", type=Path, help="JSON config file; flags override it")


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        data = json.loads(Path(args.config).read_text())
    overrides = {
        "n": args.n,
        "algorithm": args.algo,
        "adversary": args.adversary,
        "r": args.r,
        "start": args.start,
        "seed": args.seed,
        "max_steps": args.max_steps,
        "sample_interval": args.sample_interval,
        "repetitions": args.reps,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if "n" not in data:
        raise ValueError("missing required --n (or a config file providing it)")
    if "algorithm" not in data:
        raise ValueError("missing required --algo (or a config file providing it)")
    return ExperimentConfig.from_json_dict(data)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    samples_path = outdir / f"run_{cfg.run_id}_samples.csv"
    summary_path = outdir / f"run_{cfg.run_id}_summary.csv"
    result = run_sweep(
        [cfg],
        workers=args.workers,
        samples_path=samples_path,
        summary_path=summary_path,
        meta={"config": cfg.to_json_dict()},
    )
    if result.failures:
        for failed_cfg, err in result.failures:
            print(f"FAILED {failed_cfg.run_id}: {err}", file=sys.stderr)
        return 1
    for rec in result.records:
        if rec.summary is not None:
            print(
                f"{rec.run_id}: ratio={rec.summary.ratio:.4f} "
                f"convergence_time={rec.summary.convergence_time} "
                f"steady_mean_tau={rec.summary.steady_mean_tau:.1f}"
            )
        else:
            print(f"{rec.run_id}: too short to summarize")
    print(f"wrote {samples_path} and {summary_path}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    if not args.config:
        raise ValueError("sweep needs --config with a grid JSON file")
    grid = json.loads(Path(args.config).read_text())
    base = {
        key: grid[key]
        for key in ("max_steps", "sample_interval")
        if grid.get(key) is not None
    }
    configs = []
    for n in grid["n"]:
        for algorithm in grid["algorithm"]:
            for r in grid.get("r", [1]):
                for start in grid.get("start", ["sorted"]):
                    for seed in grid.get("seeds", [0]):
                        for adversary in grid.get("adversary", ["uniform"]):
                            configs.append(
                                ExperimentConfig.from_json_dict(
                                    {
                                        "n": n,
                                        "algorithm": algorithm,
                                        "adversary": adversary,
                                        "r": r,
                                        "start": start,
                                        "seed": seed,
                                        **base,
                                    }
                                )
                            )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    result = run_sweep(
        configs,
        workers=args.workers,
        samples_path=outdir / "sweep_samples.csv",
        summary_path=outdir / "sweep_summary.csv",
        meta={"grid": grid},
    )
    for failed_cfg, err in result.failures:
        print(f"FAILED {failed_cfg.run_id}: {err}", file=sys.stderr)
    print(
        f"sweep: {len(result.records)} runs ok, {len(result.failures)} failed; "
        f"output in {outdir}"
    )
    return 1 if result.failures else 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    try:
        paths = reproduce(
            args.preset,
            args.out,
            n=args.n,
            reps=args.reps,
            workers=args.workers,
            samples_every=args.thin_samples,
        )
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    for kind, path in paths.items():
        print(f"{kind}: {path}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_all(n=args.n, ops=args.ops, seed=args.seed)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    if failed:
        print(f"{failed}/{len(results)} checks failed", file=sys.stderr)
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evolvesort",
        description=(
            "Simulate sorting algorithms racing an adversary that mutates the "
            "true order after every comparison."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment")
    _add_config_flags(p_run)
    p_run.add_argument("--out", default=_default_out(), help="output directory")
    p_run.add_argument("--workers", type=int, default=1)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a config grid")
    _add_config_flags(p_sweep)
    p_sweep.add_argument("--out", default=_default_out(), help="output directory")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_rep = sub.add_parser("reproduce", help="run a named preset scenario")
    p_rep.add_argument("preset", help=f"one of: {', '.join(PRESET_NAMES)}")
    p_rep.add_argument("--out", default=_default_out(), help="output directory")
    p_rep.add_argument("--n", type=int, help="override the preset's list size")
    p_rep.add_argument("--reps", type=int, help="override the preset's repetitions")
    p_rep.add_argument("--workers", type=int, default=1)
    p_rep.add_argument(
        "--thin-samples",
        type=int,
        default=1,
        metavar="K",
        help="write every K-th sample row (1 = all)",
    )
    p_rep.set_defaults(func=_cmd_reproduce)

    p_ver = sub.add_parser("verify", help="run the cross-oracle check battery")
    p_ver.add_argument("--n", type=int, default=64)
    p_ver.add_argument("--ops", type=int, default=10_000)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
