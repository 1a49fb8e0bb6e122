"""Experiment orchestration: seeded single runs, sweeps, CSV output, and
named preset scenarios.

Determinism contract: a config (including its seed) fully determines every
byte of output.  The master seed is expanded with ``SeedSequence.spawn`` into
three named substreams -- shuffle (start configuration), algorithm (pivot
choices), adversary (mutations) -- so changing an algorithm's random choices
never perturbs the mutation sequence it races against.  Repetition i of a
config runs with seed ``seed + i``.
"""

from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .algorithms import AlgorithmKind, Sorter
from .adversaries import HOTSPOT_BOUNDARY
from .metrics import (
    Sample,
    SteadySummary,
    UndefinedSwapRatio,
    good_swap_fraction,
    mean_or_nan,
    summarize_run,
)
from .model import StartConfig, init_start_config

__all__ = [
    "AdversaryKind",
    "ExperimentConfig",
    "RunRecord",
    "SweepResult",
    "derive_rngs",
    "run_once",
    "expand_repetitions",
    "make_grid",
    "run_sweep",
    "reproduce",
    "PRESET_NAMES",
    "preset_configs",
]

STREAM_NAMES = ("shuffle", "algorithm", "adversary")

FIVE_ALGORITHMS = (
    AlgorithmKind.BUBBLE,
    AlgorithmKind.COCKTAIL,
    AlgorithmKind.INSERTION,
    AlgorithmKind.QUICKSORT,
    AlgorithmKind.BLOCKSORT,
)


class AdversaryKind(enum.Enum):
    UNIFORM = "uniform"
    HOTSPOT = "hotspot"


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation's parameters.  ``max_steps`` defaults to n^2 and
    ``sample_interval`` to floor(n/20); hotspot runs carry r=0."""

    n: int
    algorithm: AlgorithmKind
    adversary: AdversaryKind = AdversaryKind.UNIFORM
    r: int = 1
    start: StartConfig = StartConfig.SORTED
    seed: int = 0
    max_steps: int | None = None
    sample_interval: int | None = None
    repetitions: int = 1

    def __post_init__(self):
        if self.adversary is AdversaryKind.HOTSPOT and self.r != 0:
            object.__setattr__(self, "r", 0)
        self.validate()

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least two elements, got n={self.n}")
        if self.r < 0:
            raise ValueError(f"swap rate must be >= 0, got r={self.r}")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.sample_interval is not None and self.sample_interval < 1:
            raise ValueError(
                f"sample_interval must be >= 1, got {self.sample_interval}"
            )
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")

    @property
    def steps(self) -> int:
        return self.n * self.n if self.max_steps is None else self.max_steps

    @property
    def interval(self) -> int:
        if self.sample_interval is not None:
            return self.sample_interval
        return max(1, self.n // 20)

    @property
    def run_id(self) -> str:
        return (
            f"{self.algorithm.value}-{self.adversary.value}-r{self.r}"
            f"-{self.start.value}-n{self.n}-seed{self.seed}"
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "algorithm": self.algorithm.value,
            "adversary": self.adversary.value,
            "r": self.r,
            "start": self.start.value,
            "seed": self.seed,
            "max_steps": self.max_steps,
            "sample_interval": self.sample_interval,
            "repetitions": self.repetitions,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExperimentConfig":
        known = {
            "n",
            "algorithm",
            "adversary",
            "r",
            "start",
            "seed",
            "max_steps",
            "sample_interval",
            "repetitions",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        if "algorithm" in kwargs:
            kwargs["algorithm"] = AlgorithmKind(kwargs["algorithm"])
        if "adversary" in kwargs:
            kwargs["adversary"] = AdversaryKind(kwargs["adversary"])
        if "start" in kwargs:
            kwargs["start"] = StartConfig(kwargs["start"])
        return cls(**kwargs)


@dataclass
class RunRecord:
    """Config echo, sampled time series, and steady-behavior summary."""

    config: ExperimentConfig
    samples: list[Sample]
    summary: SteadySummary | None

    @property
    def run_id(self) -> str:
        return self.config.run_id

    @property
    def good_over_bad(self) -> float:
        try:
            return good_swap_fraction(self.samples)
        except UndefinedSwapRatio:
            return math.nan


@dataclass
class SweepResult:
    records: list[RunRecord]
    failures: list[tuple[ExperimentConfig, str]]


def derive_rngs(seed: int) -> tuple[np.random.Generator, ...]:
    """Expand a master seed into the (shuffle, algorithm, adversary) streams."""
    children = np.random.SeedSequence(seed).spawn(len(STREAM_NAMES))
    return tuple(np.random.Generator(np.random.PCG64(c)) for c in children)


_ADV_CODE = {AdversaryKind.UNIFORM: K.ADV_UNIFORM, AdversaryKind.HOTSPOT: K.ADV_HOTSPOT}


def run_once(cfg: ExperimentConfig) -> RunRecord:
    """Execute one seeded simulation to completion.

    Loop order per time step: staged comparison is answered truthfully, the
    algorithm applies it, then the adversary mutates, then the clock advances
    and the step may be sampled.  Bit-reproducible from the config alone.
    """
    cfg.validate()
    shuffle_rng, alg_rng, adv_rng = derive_rngs(cfg.seed)
    working, order, tracker = init_start_config(cfg.start, cfg.n, shuffle_rng)
    steps = cfg.steps
    interval = cfg.interval

    cap = steps // interval + 2
    out_t = np.zeros(cap, dtype=np.int64)
    out_tau = np.zeros(cap, dtype=np.int64)
    out_good = np.zeros(cap, dtype=np.int64)
    out_bad = np.zeros(cap, dtype=np.int64)
    out_rounds = np.zeros(cap, dtype=np.int64)
    out_tau[0] = tracker.distance  # t=0 row reflects the start configuration

    sorter = Sorter(cfg.algorithm, working, order, tracker, alg_rng)
    acc = np.zeros(K.ACC_LEN, dtype=np.int64)
    acc[K.ACC_DIST] = tracker.distance

    used = K.run_loop(
        sorter.code,
        _ADV_CODE[cfg.adversary],
        cfg.r,
        steps,
        interval,
        order.by_rank,
        order.rank_of,
        working.by_pos,
        working.pos_of,
        acc,
        sorter.ms,
        sorter.sub,
        sorter.stack,
        alg_rng,
        adv_rng,
        out_t,
        out_tau,
        out_good,
        out_bad,
        out_rounds,
        1,
    )
    tracker.distance = int(acc[K.ACC_DIST])

    samples = [
        Sample(
            t=int(out_t[i]),
            tau=int(out_tau[i]),
            good_cum=int(out_good[i]),
            bad_cum=int(out_bad[i]),
            rounds=int(out_rounds[i]),
        )
        for i in range(used)
    ]
    summary = summarize_run(samples, cfg.n) if len(samples) >= 8 else None
    return RunRecord(config=cfg, samples=samples, summary=summary)


def expand_repetitions(cfg: ExperimentConfig) -> list[ExperimentConfig]:
    """Repetition i runs with seed+i; each expanded config is a single run."""
    return [
        replace(cfg, seed=cfg.seed + i, repetitions=1)
        for i in range(cfg.repetitions)
    ]


def make_grid(
    ns: Sequence[int],
    algorithms: Sequence[AlgorithmKind],
    rs: Sequence[int],
    starts: Sequence[StartConfig],
    seeds: Sequence[int],
    adversary: AdversaryKind = AdversaryKind.UNIFORM,
    max_steps: int | None = None,
    sample_interval: int | None = None,
) -> list[ExperimentConfig]:
    """Cartesian-product grid in deterministic order."""
    configs = []
    for n in ns:
        for algorithm in algorithms:
            for r in rs:
                for start in starts:
                    for seed in seeds:
                        configs.append(
                            ExperimentConfig(
                                n=n,
                                algorithm=algorithm,
                                adversary=adversary,
                                r=r,
                                start=start,
                                seed=seed,
                                max_steps=max_steps,
                                sample_interval=sample_interval,
                            )
                        )
    return configs


SAMPLES_COLUMNS = (
    "run_id,algorithm,adversary,n,r,start,seed,t,tau,good_cum,bad_cum,rounds"
)
SUMMARY_COLUMNS = (
    "run_id,algorithm,adversary,n,r,start,seed,"
    "steady_mean_tau,ratio,convergence_time,good_over_bad"
)
AGGREGATE_COLUMNS = (
    "algorithm,adversary,n,r,start,runs,"
    "mean_steady_tau,mean_ratio,mean_convergence_time,mean_good_over_bad"
)


def _header_block(kind: str, meta: dict) -> str:
    lines = [f"# evolvesort {kind} v1"]
    for key in sorted(meta):
        lines.append(f"# {key}: {json.dumps(meta[key], sort_keys=True)}")
    lines.append(
        "# streams: SeedSequence(seed).spawn(3) -> [shuffle, algorithm, adversary];"
        " integer draws are floor(random()*m)"
    )
    lines.append(f"# hotspot_boundary: {HOTSPOT_BOUNDARY}")
    return "\n".join(lines) + "\n"


def _fmt_ratio(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.6f}"


def _config_prefix(cfg: ExperimentConfig) -> str:
    return (
        f"{cfg.run_id},{cfg.algorithm.value},{cfg.adversary.value},"
        f"{cfg.n},{cfg.r},{cfg.start.value},{cfg.seed}"
    )


def _samples_rows(rec: RunRecord, every: int = 1) -> Iterable[str]:
    prefix = _config_prefix(rec.config)
    last = len(rec.samples) - 1
    for i, s in enumerate(rec.samples):
        if i % every and i != last:
            continue
        yield f"{prefix},{s.t},{s.tau},{s.good_cum},{s.bad_cum},{s.rounds}"


def _summary_row(rec: RunRecord) -> str:
    if rec.summary is None:
        raise ValueError(f"run {rec.run_id} is too short to summarize")
    s = rec.summary
    return (
        f"{_config_prefix(rec.config)},{s.steady_mean_tau:.4f},"
        f"{_fmt_ratio(s.ratio)},{s.convergence_time},{_fmt_ratio(rec.good_over_bad)}"
    )


def _aggregate_rows(records: list[RunRecord]) -> Iterable[str]:
    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        c = rec.config
        key = (c.algorithm.value, c.adversary.value, c.n, c.r, c.start.value)
        groups.setdefault(key, []).append(rec)
    for key, recs in groups.items():
        algorithm, adversary, n, r, start = key
        mean_tau = sum(x.summary.steady_mean_tau for x in recs) / len(recs)
        mean_ratio = sum(x.summary.ratio for x in recs) / len(recs)
        mean_conv = sum(x.summary.convergence_time for x in recs) / len(recs)
        mean_gb = mean_or_nan([x.good_over_bad for x in recs])
        yield (
            f"{algorithm},{adversary},{n},{r},{start},{len(recs)},"
            f"{mean_tau:.4f},{_fmt_ratio(mean_ratio)},{mean_conv:.1f},"
            f"{_fmt_ratio(mean_gb)}"
        )


def run_sweep(
    configs: Sequence[ExperimentConfig],
    workers: int = 1,
    samples_path: str | Path | None = None,
    summary_path: str | Path | None = None,
    meta: dict | None = None,
    samples_every: int = 1,
) -> SweepResult:
    """Run every config (repetitions expanded), optionally streaming CSVs.

    Runs execute on up to ``workers`` threads (the compiled loop releases the
    GIL) but records are consumed in grid order, so output bytes do not
    depend on the worker count.  A failing config is reported in
    ``failures`` without aborting the rest.
    """
    if not configs:
        raise ValueError("empty sweep grid")
    expanded: list[ExperimentConfig] = []
    for cfg in configs:
        expanded.extend(expand_repetitions(cfg))

    meta = dict(meta or {})
    meta.setdefault("runs", len(expanded))

    samples_file = summary_file = None
    try:
        if samples_path is not None:
            samples_file = open(samples_path, "w", newline="")
            samples_file.write(_header_block("samples", meta))
            samples_file.write(SAMPLES_COLUMNS + "\n")
        if summary_path is not None:
            summary_file = open(summary_path, "w", newline="")
            summary_file.write(_header_block("summary", meta))
            summary_file.write(SUMMARY_COLUMNS + "\n")

        records: list[RunRecord] = []
        failures: list[tuple[ExperimentConfig, str]] = []

        def consume(cfg: ExperimentConfig, outcome, error: str | None):
            if error is not None:
                failures.append((cfg, error))
                return
            records.append(outcome)
            if samples_file is not None:
                for row in _samples_rows(outcome, samples_every):
                    samples_file.write(row + "\n")
            if summary_file is not None and outcome.summary is not None:
                summary_file.write(_summary_row(outcome) + "\n")

        if workers <= 1:
            for cfg in expanded:
                try:
                    consume(cfg, run_once(cfg), None)
                except Exception as exc:  # noqa: BLE001 - reported per config
                    consume(cfg, None, f"{type(exc).__name__}: {exc}")
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [(cfg, pool.submit(run_once, cfg)) for cfg in expanded]
                for cfg, fut in futures:  # grid order, regardless of completion
                    try:
                        consume(cfg, fut.result(), None)
                    except Exception as exc:  # noqa: BLE001
                        consume(cfg, None, f"{type(exc).__name__}: {exc}")
        return SweepResult(records=records, failures=failures)
    finally:
        if samples_file is not None:
            samples_file.close()
        if summary_file is not None:
            summary_file.close()


def write_aggregate_csv(
    path: str | Path, records: list[RunRecord], meta: dict | None = None
) -> None:
    """Per-(algorithm, adversary, n, r, start) means across seeds."""
    with open(path, "w", newline="") as fh:
        fh.write(_header_block("aggregate", dict(meta or {})))
        fh.write(AGGREGATE_COLUMNS + "\n")
        for row in _aggregate_rows(records):
            fh.write(row + "\n")


PRESET_NAMES = (
    "fig-algs",
    "fig-r-vs-size",
    "fig-start-config",
    "fig-hot",
    "fig-swap-ratio",
    "table-conv",
    "table-ratio",
)

_PRESET_SEED = 1

TABLE_RATIO_RS = tuple(range(1, 21)) + tuple(range(40, 51)) + (100, 256)
SWAP_RATIO_RS = (1, 2, 5, 10, 20, 50, 100, 256)


def preset_configs(
    name: str, n: int | None = None, reps: int | None = None
) -> list[ExperimentConfig]:
    """Grid behind each reproduction preset (default seeds start at 1).

    ``n`` and ``reps`` scale a preset down (or up) without changing its
    shape; figure presets default to single runs, table presets and
    aggregate figures to 5 repetitions.
    """
    seeds = lambda k: [_PRESET_SEED + i for i in range(k)]  # noqa: E731

    if name == "fig-algs":
        return make_grid(
            [n or 1000], FIVE_ALGORITHMS, [1], [StartConfig.SHUFFLED],
            seeds(reps or 1),
        )
    if name == "fig-r-vs-size":
        ns = [n] if n else list(range(1000, 10001, 1000))
        return make_grid(
            ns,
            [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT],
            [1, 2, 10],
            [StartConfig.SORTED],
            seeds(reps or 5),
        )
    if name == "fig-start-config":
        return make_grid(
            [n or 1000],
            [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT],
            [256],
            list(StartConfig),
            seeds(reps or 1),
        )
    if name == "fig-hot":
        uniform = make_grid(
            [n or 1000], FIVE_ALGORITHMS, [1], [StartConfig.SHUFFLED],
            seeds(reps or 1),
        )
        hot = make_grid(
            [n or 1000], FIVE_ALGORITHMS, [0], [StartConfig.SHUFFLED],
            seeds(reps or 1), adversary=AdversaryKind.HOTSPOT,
        )
        return uniform + hot
    if name == "fig-swap-ratio":
        return make_grid(
            [n or 1000], [AlgorithmKind.INSERTION], list(SWAP_RATIO_RS),
            [StartConfig.SORTED], seeds(reps or 5),
        )
    if name == "table-conv":
        return make_grid(
            [n or 1000],
            [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT],
            list(range(0, 11)),
            [StartConfig.SHUFFLED],
            seeds(reps or 5),
        )
    if name == "table-ratio":
        return make_grid(
            [n or 1000], FIVE_ALGORITHMS, list(TABLE_RATIO_RS),
            [StartConfig.SORTED], seeds(reps or 5),
        )
    raise ValueError(f"unknown preset {name!r}; valid: {', '.join(PRESET_NAMES)}")


def reproduce(
    name: str,
    outdir: str | Path,
    n: int | None = None,
    reps: int | None = None,
    workers: int = 1,
    samples_every: int = 1,
) -> dict[str, Path]:
    """Run a preset and write its samples, per-run summary, and aggregate
    CSVs into ``outdir``.  Returns the written paths."""
    configs = preset_configs(name, n=n, reps=reps)
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    slug = name.replace("-", "_")
    paths = {
        "samples": outdir / f"{slug}_samples.csv",
        "summary": outdir / f"{slug}_summary.csv",
        "aggregate": outdir / f"{slug}_aggregate.csv",
    }
    meta = {
        "preset": name,
        "n_override": n,
        "reps_override": reps,
    }
    result = run_sweep(
        configs,
        workers=workers,
        samples_path=paths["samples"],
        summary_path=paths["summary"],
        meta=meta,
        samples_every=samples_every,
    )
    if result.failures:
        details = "; ".join(f"{cfg.run_id}: {err}" for cfg, err in result.failures)
        raise RuntimeError(f"preset {name} had failing runs: {details}")
    write_aggregate_csv(paths["aggregate"], result.records, meta=meta)
    return paths
