import math

import numpy as np
import pytest

from evolvesort.algorithms import AlgorithmKind, BlockSchedule, Sorter, block_size
from evolvesort.model import (
    StartConfig,
    compare_true,
    init_start_config,
    recount_tau,
)
from evolvesort.reference import ClassicalSorter
from evolvesort.runner import derive_rngs
from evolvesort.verify import check_frozen_equivalence

QUADRATIC = (AlgorithmKind.BUBBLE, AlgorithmKind.COCKTAIL, AlgorithmKind.INSERTION)


def fresh_sorter(kind, n=8, start=StartConfig.SHUFFLED, seed=0):
    shuffle_rng, alg_rng, _ = derive_rngs(seed)
    working, order, tracker = init_start_config(start, n, shuffle_rng)
    sorter = Sorter(kind, working, order, tracker, alg_rng)
    return sorter, working, order, tracker


def drive(sorter, working, order, steps):
    for _ in range(steps):
        i, j = sorter.next_query()
        result = compare_true(int(working.by_pos[i]), int(working.by_pos[j]), order)
        sorter.apply_result(result)


class TestFreshQueries:
    def test_bubble_starts_at_front(self):
        sorter, *_ = fresh_sorter(AlgorithmKind.BUBBLE)
        assert sorter.next_query() == (0, 1)

    def test_insertion_compares_second_element_with_predecessor(self):
        sorter, *_ = fresh_sorter(AlgorithmKind.INSERTION)
        assert sorter.next_query() == (1, 0)

    def test_quicksort_scans_against_parked_pivot(self):
        sorter, *_ = fresh_sorter(AlgorithmKind.QUICKSORT, n=8)
        assert sorter.next_query() == (0, 7)

    def test_cocktail_reverses_after_forward_pass(self):
        sorter, working, order, _ = fresh_sorter(
            AlgorithmKind.COCKTAIL, n=4, start=StartConfig.SORTED
        )
        seen = []
        for _ in range(7):
            seen.append(sorter.next_query())
            drive(sorter, working, order, 1)
        # forward (0,1),(1,2),(2,3); backward starts again at (2,3)
        assert seen == [(0, 1), (1, 2), (2, 3), (2, 3), (1, 2), (0, 1), (0, 1)]

    def test_rejects_tiny_n(self):
        shuffle_rng, alg_rng, _ = derive_rngs(0)
        with pytest.raises(ValueError):
            fresh_sorter(AlgorithmKind.BUBBLE, n=1)


class TestFrozenEquivalence:
    """With r=0 every machine must replay its classical implementation."""

    @pytest.mark.parametrize("kind", list(AlgorithmKind), ids=lambda k: k.value)
    @pytest.mark.parametrize("n", [2, 3, 5, 16, 64])
    def test_machine_replays_classical_run(self, kind, n):
        for seed in (0, 1):
            res = check_frozen_equivalence(kind, n=n, seed=seed)
            assert res.passed, res.detail

    @pytest.mark.parametrize("kind", list(AlgorithmKind), ids=lambda k: k.value)
    def test_round_comparison_counts_match(self, kind):
        n = 32
        shuffle_rng, machine_rng, _ = derive_rngs(3)
        working, order, tracker = init_start_config(StartConfig.SHUFFLED, n, shuffle_rng)
        _, ref_rng, _ = derive_rngs(3)
        reference = ClassicalSorter(kind, [int(x) for x in working.by_pos], ref_rng)
        sorter = Sorter(kind, working, order, tracker, machine_rng)
        machine_count = 0
        while sorter.round_completed() < 1:
            drive(sorter, working, order, 1)
            machine_count += 1
        ref_count = 0
        while reference.round_completed() < 1:
            i, j = reference.next_query()
            a, b = reference.arr[i], reference.arr[j]
            reference.apply_result(compare_true(a, b, order))
            ref_count += 1
        assert machine_count == ref_count


class TestClassicalBehaviors:
    def test_insertion_fixes_two_element_list_in_one_comparison(self):
        sorter, working, order, tracker = fresh_sorter(
            AlgorithmKind.INSERTION, n=2, start=StartConfig.REVERSED
        )
        assert tracker.distance == 1
        drive(sorter, working, order, 1)
        assert tracker.distance == 0
        drive(sorter, working, order, 1)
        assert tracker.distance == 0
        assert list(working.by_pos) == [0, 1]

    def test_quicksort_sorts_within_first_round(self):
        sorter, working, order, _ = fresh_sorter(
            AlgorithmKind.QUICKSORT, n=128, seed=5
        )
        while sorter.round_completed() < 1:
            drive(sorter, working, order, 1)
        assert sorter.last_round_end_tau == 0

    def test_bubble_sorts_reversed_within_classical_bound(self):
        n = 64
        sorter, working, order, tracker = fresh_sorter(
            AlgorithmKind.BUBBLE, n=n, start=StartConfig.REVERSED
        )
        steps = 0
        while tracker.distance and steps <= (n - 1) ** 2:
            drive(sorter, working, order, 1)
            steps += 1
        assert tracker.distance == 0
        assert steps <= (n - 1) ** 2

    def test_round_counter_starts_at_zero(self):
        for kind in AlgorithmKind:
            sorter, *_ = fresh_sorter(kind, n=12)
            assert sorter.round_completed() == 0

    def test_machines_count_rounds_forever(self):
        sorter, working, order, _ = fresh_sorter(
            AlgorithmKind.QUICKSORT, n=8, seed=2
        )
        drive(sorter, working, order, 2000)
        assert sorter.round_completed() > 10


class TestHybrid:
    def test_switches_to_insertion_after_one_quicksort_round(self):
        sorter, working, order, _ = fresh_sorter(AlgorithmKind.HYBRID, n=32, seed=1)
        while sorter.round_completed() < 1:
            drive(sorter, working, order, 1)
        assert sorter.last_round_end_tau == 0
        # insertion restarts at the front and walks adjacent pairs only
        assert sorter.next_query() == (1, 0)
        queries = []
        for _ in range(40):
            queries.append(sorter.next_query())
            drive(sorter, working, order, 1)
        assert all(abs(i - j) == 1 for i, j in queries)

    def test_counts_insertion_rounds_after_switch(self):
        sorter, working, order, _ = fresh_sorter(
            AlgorithmKind.HYBRID, n=8, start=StartConfig.SORTED, seed=4
        )
        drive(sorter, working, order, 3000)
        assert sorter.round_completed() > 5


class TestBlockSchedule:
    def test_paper_scale_block_size(self):
        # smallest even number above 10 ln 1000 = 69.1 dividing 1000
        assert block_size(1000) == 100

    def test_block_size_prefers_divisors(self):
        for n in (2000, 5000, 10000):
            b = block_size(n)
            assert n % b == 0
            assert b % 2 == 0
            assert 10 * math.log(n) < b <= 100 * math.log(n)

    def test_block_size_fallback_when_no_divisor(self):
        n = 1021  # prime: no even divisor in range
        b = block_size(n)
        assert b == 70
        assert b > 10 * math.log(n)

    def test_schedule_shape_at_paper_scale(self):
        sched = BlockSchedule.for_n(1000)
        assert sched.size == 100
        assert len(sched.blocks) == 19
        assert sched.blocks[0] == (0, 100)
        assert sched.blocks[-1] == (900, 1000)

    @pytest.mark.parametrize("n", [2, 3, 7, 10, 64, 100, 333, 1000, 1021, 1500])
    def test_every_position_and_adjacent_pair_covered(self, n):
        sched = BlockSchedule.for_n(n)
        assert sched.covers_all_positions()
        assert sched.covers_all_adjacent_pairs()
        for lo, hi in sched.blocks:
            assert hi - lo >= 2

    def test_blocks_overlap_by_half(self):
        sched = BlockSchedule.for_n(1000)
        starts = [lo for lo, _ in sched.blocks]
        assert starts == list(range(0, 901, 50))


class TestBlocksort:
    def test_emits_one_comparison_per_step(self):
        sorter, working, order, _ = fresh_sorter(AlgorithmKind.BLOCKSORT, n=64, seed=3)
        for _ in range(5000):
            i, j = sorter.next_query()
            assert 0 <= i < 64 and 0 <= j < 64 and i != j
            drive(sorter, working, order, 1)

    def test_whole_list_round_sorts_under_frozen_truth(self):
        sorter, working, order, _ = fresh_sorter(AlgorithmKind.BLOCKSORT, n=128, seed=7)
        while sorter.round_completed() < 1:
            drive(sorter, working, order, 1)
        assert sorter.last_round_end_tau == 0

    def test_tracker_consistent_during_long_run(self):
        sorter, working, order, tracker = fresh_sorter(
            AlgorithmKind.BLOCKSORT, n=48, seed=9
        )
        for step in range(4000):
            drive(sorter, working, order, 1)
            if step % 97 == 0:
                assert tracker.distance == recount_tau(working, order)
