"""Reading and validating the evolvesort CSV schema.

The simulator writes `#`-prefixed comment headers followed by a column row;
this module parses those files into typed rows and raises precise errors
when a file does not match the documented schema.  Nothing here recomputes
simulation quantities -- the CSVs are the single source of truth.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "SchemaError",
    "MissingSeriesError",
    "SamplesRow",
    "SummaryRow",
    "read_samples",
    "read_summary",
]

SAMPLES_COLUMNS = (
    "run_id", "algorithm", "adversary", "n", "r", "start", "seed",
    "t", "tau", "good_cum", "bad_cum", "rounds",
)
SUMMARY_COLUMNS = (
    "run_id", "algorithm", "adversary", "n", "r", "start", "seed",
    "steady_mean_tau", "ratio", "convergence_time", "good_over_bad",
)


class SchemaError(ValueError):
    """Input file does not match the documented CSV schema."""


class MissingSeriesError(ValueError):
    """Input parses but lacks the series a figure kind needs."""


@dataclass(frozen=True)
class SamplesRow:
    run_id: str
    algorithm: str
    adversary: str
    n: int
    r: int
    start: str
    seed: int
    t: int
    tau: int
    good_cum: int
    bad_cum: int
    rounds: int


@dataclass(frozen=True)
class SummaryRow:
    run_id: str
    algorithm: str
    adversary: str
    n: int
    r: int
    start: str
    seed: int
    steady_mean_tau: float
    ratio: float
    convergence_time: int
    good_over_bad: float


def _data_lines(path: Path):
    with open(path, newline="") as fh:
        for line in fh:
            if line.startswith("#"):
                continue
            yield line


def _check_header(path: Path, header: list[str] | None, expected: tuple[str, ...]):
    if header is None:
        raise SchemaError(f"{path}: empty file, expected columns {','.join(expected)}")
    for column in expected:
        if column not in header:
            raise SchemaError(f"{path}: missing column '{column}'")


def _int_field(path: Path, row: dict, column: str) -> int:
    try:
        return int(row[column])
    except ValueError as exc:
        raise SchemaError(f"{path}: column '{column}' has non-integer value {row[column]!r}") from exc


def _float_field(path: Path, row: dict, column: str) -> float:
    value = row[column]
    if value == "":
        return math.nan
    try:
        return float(value)
    except ValueError as exc:
        raise SchemaError(f"{path}: column '{column}' has non-numeric value {value!r}") from exc


def read_samples(paths: list[Path]) -> list[SamplesRow]:
    rows: list[SamplesRow] = []
    for path in paths:
        path = Path(path)
        if not path.exists():
            raise SchemaError(f"{path}: no such file")
        reader = csv.DictReader(_data_lines(path))
        _check_header(path, reader.fieldnames, SAMPLES_COLUMNS)
        before = len(rows)
        for row in reader:
            rows.append(
                SamplesRow(
                    run_id=row["run_id"],
                    algorithm=row["algorithm"],
                    adversary=row["adversary"],
                    n=_int_field(path, row, "n"),
                    r=_int_field(path, row, "r"),
                    start=row["start"],
                    seed=_int_field(path, row, "seed"),
                    t=_int_field(path, row, "t"),
                    tau=_int_field(path, row, "tau"),
                    good_cum=_int_field(path, row, "good_cum"),
                    bad_cum=_int_field(path, row, "bad_cum"),
                    rounds=_int_field(path, row, "rounds"),
                )
            )
        if len(rows) == before:
            raise SchemaError(f"{path}: no data rows")
    return rows


def read_summary(paths: list[Path]) -> list[SummaryRow]:
    rows: list[SummaryRow] = []
    for path in paths:
        path = Path(path)
        if not path.exists():
            raise SchemaError(f"{path}: no such file")
        reader = csv.DictReader(_data_lines(path))
        _check_header(path, reader.fieldnames, SUMMARY_COLUMNS)
        before = len(rows)
        for row in reader:
            rows.append(
                SummaryRow(
                    run_id=row["run_id"],
                    algorithm=row["algorithm"],
                    adversary=row["adversary"],
                    n=_int_field(path, row, "n"),
                    r=_int_field(path, row, "r"),
                    start=row["start"],
                    seed=_int_field(path, row, "seed"),
                    steady_mean_tau=_float_field(path, row, "steady_mean_tau"),
                    ratio=_float_field(path, row, "ratio"),
                    convergence_time=_int_field(path, row, "convergence_time"),
                    good_over_bad=_float_field(path, row, "good_over_bad"),
                )
            )
        if len(rows) == before:
            raise SchemaError(f"{path}: no data rows")
    return rows
