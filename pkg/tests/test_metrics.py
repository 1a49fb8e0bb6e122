import numpy as np
import pytest

from evolvesort.metrics import (
    Sample,
    UndefinedSwapRatio,
    brute_force_tau,
    good_swap_fraction,
    summarize_run,
)
from evolvesort.model import StartConfig, init_start_config, recount_tau


def series(taus, interval=10):
    return [
        Sample(t=i * interval, tau=tau, good_cum=0, bad_cum=0, rounds=0)
        for i, tau in enumerate(taus)
    ]


class TestBruteForce:
    def test_identity(self):
        rng = np.random.Generator(np.random.PCG64(0))
        working, order, _ = init_start_config(StartConfig.SORTED, 6, rng)
        assert brute_force_tau(working, order) == 0

    def test_hand_counted(self):
        from tests.test_model import make_state

        working, order, _ = make_state([1, 0, 3, 2])
        assert brute_force_tau(working, order) == 2

    def test_agrees_with_merge_count(self):
        rng = np.random.Generator(np.random.PCG64(1))
        working, order, _ = init_start_config(StartConfig.SHUFFLED, 64, rng)
        assert brute_force_tau(working, order) == recount_tau(working, order)

    def test_size_guard(self):
        rng = np.random.Generator(np.random.PCG64(2))
        working, order, _ = init_start_config(StartConfig.SORTED, 2, rng)
        working.by_pos = np.arange(20_000)
        working.pos_of = np.arange(20_000)
        order.by_rank = np.arange(20_000)
        order.rank_of = np.arange(20_000)
        with pytest.raises(ValueError):
            brute_force_tau(working, order)


class TestSummarizeRun:
    def test_constant_series(self):
        s = summarize_run(series([42] * 20), n=100)
        assert s.steady_mean_tau == 42.0
        assert s.convergence_time == 0
        assert s.ratio == 0.42

    def test_decreasing_series_converges_at_plateau_entry(self):
        taus = [100, 90, 80, 70, 60, 50, 40, 30, 20, 10] + [10] * 30
        s = summarize_run(series(taus), n=100)
        # steady window = last 10 samples, all 10: band = max(0, 0.5, 1) = 1
        assert s.steady_mean_tau == 10.0
        assert s.convergence_time == 90  # sample index 9, the first tau=10

    def test_late_noise_does_not_defer_convergence(self):
        taus = [100, 50, 10] + [10] * 30 + [15] + [10] * 6
        s = summarize_run(series(taus), n=100)
        assert s.convergence_time == 20

    def test_window_fraction_controls_steady_window(self):
        taus = [100] * 20 + [10] * 20
        wide = summarize_run(series(taus), n=100, window_fraction=0.5)
        narrow = summarize_run(series(taus), n=100, window_fraction=0.25)
        assert narrow.steady_mean_tau == 10.0
        assert wide.steady_mean_tau == 10.0
        assert wide.steady_window[0] < narrow.steady_window[0]

    def test_requires_eight_samples(self):
        with pytest.raises(ValueError):
            summarize_run(series([1] * 7), n=10)

    def test_window_fraction_validated(self):
        with pytest.raises(ValueError):
            summarize_run(series([1] * 20), n=10, window_fraction=1.5)

    def test_deterministic(self):
        taus = list(range(100, 0, -1)) + [5] * 40
        a = summarize_run(series(taus), n=50)
        b = summarize_run(series(taus), n=50)
        assert a == b

    def test_steady_window_span(self):
        s = summarize_run(series([7] * 40, interval=5), n=10)
        assert s.steady_window == (150, 195)


class TestGoodSwapFraction:
    def test_ratio_at_final_sample(self):
        samples = [
            Sample(t=0, tau=0, good_cum=0, bad_cum=0, rounds=0),
            Sample(t=10, tau=5, good_cum=3, bad_cum=12, rounds=0),
        ]
        assert good_swap_fraction(samples) == 0.25

    def test_undefined_without_bad_swaps(self):
        samples = [Sample(t=10, tau=0, good_cum=0, bad_cum=0, rounds=0)]
        with pytest.raises(UndefinedSwapRatio):
            good_swap_fraction(samples)

    def test_empty_series_rejected(self):
        with pytest.raises(ValueError):
            good_swap_fraction([])
