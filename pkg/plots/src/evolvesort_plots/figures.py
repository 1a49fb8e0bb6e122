"""The five figure kinds rendered from evolvesort CSVs.

Time-series kinds (ALGS, HOT, STARTCONFIG) read samples files and plot the
tau distance against comparisons-per-element, averaging across seeds of the
same configuration; ALGS and HOT add a zoomed inset of the steady tail.
Aggregate kinds read per-run summary files: RVSSIZE plots the steady K/n
ratio against list size, SWAPRATIO the good/bad mutation ratio against the
swap rate on a log axis.

Rendering is a pure file-to-file transformation with fixed styling; equal
inputs give byte-identical images.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .schema import (
    MissingSeriesError,
    SamplesRow,
    SummaryRow,
    read_samples,
    read_summary,
)

__all__ = ["FigureKind", "FigureSpec", "RenderReport", "render"]

START_ORDER = ("sorted", "shuffled", "half_cyclic_shift", "reversed")

_TAIL_FRACTION = 0.25
_FIGSIZE = (9.0, 5.5)
_DPI = 120


class FigureKind(enum.Enum):
    ALGS = "algs"
    RVSSIZE = "r-vs-size"
    STARTCONFIG = "start-config"
    HOT = "hot"
    SWAPRATIO = "swap-ratio"


@dataclass(frozen=True)
class FigureSpec:
    kind: FigureKind
    inputs: tuple[Path, ...]
    output: Path


@dataclass(frozen=True)
class RenderReport:
    output: Path
    series: tuple[str, ...]


def _mean_series(rows: list[SamplesRow]) -> tuple[list[float], list[float], int]:
    """Average tau over runs at each sampled t; x is t scaled by n."""
    n = rows[0].n
    by_t: dict[int, list[int]] = {}
    for row in rows:
        by_t.setdefault(row.t, []).append(row.tau)
    ts = sorted(by_t)
    xs = [t / n for t in ts]
    ys = [sum(by_t[t]) / len(by_t[t]) for t in ts]
    return xs, ys, n


def _tau_axes(ax, title: str):
    ax.set_xlabel("comparisons / n")
    ax.set_ylabel("Kendall tau distance")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)


def _plot_with_tail_inset(series: dict[str, list[SamplesRow]], title: str, output: Path):
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    inset = ax.inset_axes([0.42, 0.42, 0.55, 0.53])
    tail_x0 = None
    for label in sorted(series):
        xs, ys, _ = _mean_series(series[label])
        ax.plot(xs, ys, label=label, linewidth=1.2)
        cut = int(len(xs) * (1 - _TAIL_FRACTION))
        inset.plot(xs[cut:], ys[cut:], linewidth=1.0)
        if xs[cut:]:
            tail_x0 = xs[cut] if tail_x0 is None else min(tail_x0, xs[cut])
    inset.set_title("steady tail", fontsize=8)
    inset.tick_params(labelsize=7)
    inset.grid(True, alpha=0.3)
    _tau_axes(ax, title)
    ax.legend(loc="upper left", fontsize=8)
    fig.savefig(output)
    plt.close(fig)


def _render_algs(spec: FigureSpec) -> RenderReport:
    rows = read_samples(list(spec.inputs))
    series: dict[str, list[SamplesRow]] = {}
    for row in rows:
        series.setdefault(row.algorithm, []).append(row)
    if not series:
        raise MissingSeriesError("no algorithm series found; expected at least one")
    _plot_with_tail_inset(series, "Distance to the evolving order over time", spec.output)
    return RenderReport(output=spec.output, series=tuple(sorted(series)))


def _render_hot(spec: FigureSpec) -> RenderReport:
    rows = [r for r in read_samples(list(spec.inputs)) if r.adversary == "hotspot"]
    series: dict[str, list[SamplesRow]] = {}
    for row in rows:
        series.setdefault(row.algorithm, []).append(row)
    if not series:
        raise MissingSeriesError(
            "no hot-spot series found; expected rows with adversary=hotspot"
        )
    _plot_with_tail_inset(series, "Behavior under hot-spot mutations", spec.output)
    return RenderReport(output=spec.output, series=tuple(sorted(series)))


def _render_startconfig(spec: FigureSpec) -> RenderReport:
    rows = read_samples(list(spec.inputs))
    algorithms = sorted({r.algorithm for r in rows})
    if not algorithms:
        raise MissingSeriesError("no start-configuration series found")
    missing = [
        f"{algorithm}/{start}"
        for algorithm in algorithms
        for start in START_ORDER
        if not any(r.algorithm == algorithm and r.start == start for r in rows)
    ]
    if missing:
        raise MissingSeriesError(
            "missing start-configuration series: " + ", ".join(missing)
        )
    fig, axes = plt.subplots(
        1, len(algorithms), figsize=(_FIGSIZE[0], 4.2), dpi=_DPI, squeeze=False
    )
    labels = []
    for ax, algorithm in zip(axes[0], algorithms):
        for start in START_ORDER:
            group = [r for r in rows if r.algorithm == algorithm and r.start == start]
            xs, ys, _ = _mean_series(group)
            ax.plot(xs, ys, label=start, linewidth=1.2)
            labels.append(f"{algorithm}/{start}")
        _tau_axes(ax, algorithm)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return RenderReport(output=spec.output, series=tuple(labels))


def _render_rvssize(spec: FigureSpec) -> RenderReport:
    rows = read_summary(list(spec.inputs))
    series: dict[str, dict[int, list[float]]] = {}
    for row in rows:
        label = f"{row.algorithm} r={row.r}"
        series.setdefault(label, {}).setdefault(row.n, []).append(row.ratio)
    if not series:
        raise MissingSeriesError("no (algorithm, r) series found")
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    for label in sorted(series):
        points = series[label]
        ns = sorted(points)
        ys = [sum(points[n]) / len(points[n]) for n in ns]
        ax.plot(ns, ys, marker="o", markersize=3, linewidth=1.2, label=label)
    ax.set_xlabel("list size n")
    ax.set_ylabel("steady Kendall tau / n")
    ax.set_title("Steady distance ratio as the list grows")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.savefig(spec.output)
    plt.close(fig)
    return RenderReport(output=spec.output, series=tuple(sorted(series)))


def _render_swapratio(spec: FigureSpec) -> RenderReport:
    rows = [
        r
        for r in read_summary(list(spec.inputs))
        if r.adversary == "uniform" and r.r >= 1 and not math.isnan(r.good_over_bad)
    ]
    series: dict[str, dict[int, list[float]]] = {}
    for row in rows:
        series.setdefault(row.algorithm, {}).setdefault(row.r, []).append(
            row.good_over_bad
        )
    if not series:
        raise MissingSeriesError(
            "no swap-ratio series found; expected uniform-adversary rows with r >= 1"
        )
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    for label in sorted(series):
        points = series[label]
        rs = sorted(points)
        ys = [sum(points[r]) / len(points[r]) for r in rs]
        ax.plot(rs, ys, marker="o", markersize=4, linewidth=1.2, label=label)
    ax.set_xscale("log")
    ax.axhline(1.0, color="gray", linewidth=0.8, linestyle="--")
    ax.set_xlabel("swaps per comparison r (log)")
    ax.set_ylabel("good / bad mutation ratio")
    ax.set_title("Fraction of adversary swaps that fix inversions")
    ax.grid(True, alpha=0.3, which="both")
    ax.legend(fontsize=8)
    fig.savefig(spec.output)
    plt.close(fig)
    return RenderReport(output=spec.output, series=tuple(sorted(series)))


_RENDERERS = {
    FigureKind.ALGS: _render_algs,
    FigureKind.HOT: _render_hot,
    FigureKind.STARTCONFIG: _render_startconfig,
    FigureKind.RVSSIZE: _render_rvssize,
    FigureKind.SWAPRATIO: _render_swapratio,
}


def render(spec: FigureSpec) -> RenderReport:
    """Render one figure; returns the output path and the series drawn."""
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    return _RENDERERS[spec.kind](spec)
