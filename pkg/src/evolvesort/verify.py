"""Cross-route consistency checks.

Three independent routes exist for every quantity the simulator reports:

* tau distance: incremental tracker vs merge-count vs brute-force pairs;
* sorter behavior: flat-array machines vs classical generator transcriptions
  under a frozen true order;
* whole runs: the fused compiled loop vs the same simulation stepped through
  the interpreted model/adversary layer.

``run_all`` executes the whole battery (this backs the CLI ``verify``
subcommand, so the checks can run in CI without a test framework).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adversaries import HotSpotAdversary, UniformAdversary, mutate
from .algorithms import AlgorithmKind, Sorter
from .metrics import Sample, brute_force_tau, summarize_run
from .model import (
    SimClock,
    StartConfig,
    compare_true,
    init_start_config,
    recount_tau,
    swap_adjacent_true,
    swap_adjacent_working,
    swap_working_positions,
)
from .reference import ClassicalSorter
from .runner import AdversaryKind, ExperimentConfig, RunRecord, derive_rngs, run_once

__all__ = [
    "CheckResult",
    "check_tau_oracles",
    "check_frozen_equivalence",
    "check_engine_equivalence",
    "run_once_interpreted",
    "run_all",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_tau_oracles(n: int = 64, ops: int = 10_000, seed: int = 0) -> CheckResult:
    """Random interleaving of working/true swaps; the incremental tracker
    must match both recounting oracles at every checkpoint."""
    rng = np.random.Generator(np.random.PCG64(seed))
    working, order, tracker = init_start_config(StartConfig.SHUFFLED, n, rng)
    checked = 0
    for op in range(ops):
        u = rng.random()
        before = tracker.distance
        if u < 0.4:
            swap_adjacent_working(int(rng.random() * (n - 1)), working, order, tracker)
        elif u < 0.8:
            swap_adjacent_true(int(rng.random() * (n - 1)), order, working, tracker)
        else:
            i = int(rng.random() * n)
            j = int(rng.random() * n)
            swap_working_positions(i, j, working, order, tracker)
            if i == j and tracker.distance != before:
                return CheckResult(
                    "tau_oracles", False, f"no-op swap changed distance (seed={seed})"
                )
        if u < 0.8 and abs(tracker.distance - before) != 1:
            return CheckResult(
                "tau_oracles",
                False,
                f"adjacent swap moved distance by {tracker.distance - before} "
                f"(op={op}, seed={seed})",
            )
        if op % 97 == 0 or op == ops - 1:
            merge = recount_tau(working, order)
            brute = brute_force_tau(working, order)
            if not tracker.distance == merge == brute:
                return CheckResult(
                    "tau_oracles",
                    False,
                    f"tracker={tracker.distance} merge={merge} brute={brute} "
                    f"(op={op}, seed={seed})",
                )
            checked += 1
    working.check_consistent()
    order.check_consistent()
    return CheckResult(
        "tau_oracles", True, f"n={n}, {ops} ops, {checked} checkpoints agree"
    )


def check_frozen_equivalence(
    kind: AlgorithmKind, n: int = 64, seed: int = 0, rounds: int = 1
) -> CheckResult:
    """With no adversary, a machine must replay its classical counterpart:
    identical comparison sequence, identical list, same round boundary."""
    name = f"frozen_{kind.value}"
    shuffle_rng, machine_rng, _ = derive_rngs(seed)
    working, order, tracker = init_start_config(StartConfig.SHUFFLED, n, shuffle_rng)
    start = [int(x) for x in working.by_pos]

    _, reference_rng, _ = derive_rngs(seed)
    ref_arr = list(start)
    reference = ClassicalSorter(kind, ref_arr, reference_rng)

    machine = Sorter(kind, working, order, tracker, machine_rng)
    steps = 0
    limit = rounds * 4 * n * n + 16
    while machine.round_completed() < rounds:
        q_machine = machine.next_query()
        q_ref = reference.next_query()
        if q_machine != q_ref:
            return CheckResult(
                name,
                False,
                f"query #{steps} differs: machine {q_machine} vs classical {q_ref} "
                f"(seed={seed})",
            )
        result = compare_true(
            int(working.by_pos[q_machine[0]]), int(working.by_pos[q_machine[1]]), order
        )
        machine.apply_result(result)
        reference.apply_result(result)
        if reference.round_completed() != machine.round_completed():
            return CheckResult(
                name,
                False,
                f"round boundary differs at comparison {steps} (seed={seed})",
            )
        steps += 1
        if steps > limit:
            return CheckResult(name, False, f"no round boundary after {steps} steps")
    if [int(x) for x in working.by_pos] != ref_arr:
        return CheckResult(name, False, f"final lists differ (seed={seed})")
    # the machine may already have staged the next round (parking a pivot),
    # so judge sortedness at the recorded round boundary
    if machine.last_round_end_tau != 0:
        return CheckResult(
            name,
            False,
            f"tau={machine.last_round_end_tau} at the end of a frozen round, "
            f"expected 0 (seed={seed})",
        )
    if tracker.distance != recount_tau(working, order):
        return CheckResult(
            name, False, f"tracker diverged from recount (seed={seed})"
        )
    return CheckResult(name, True, f"n={n}, {steps} comparisons replayed")


def run_once_interpreted(cfg: ExperimentConfig) -> RunRecord:
    """The run_once loop stepped through the interpreted layer.

    Used to cross-check the fused kernel; identical seeds must give an
    identical sample series.  Orders of magnitude slower, so keep steps
    small.
    """
    cfg.validate()
    shuffle_rng, alg_rng, adv_rng = derive_rngs(cfg.seed)
    working, order, tracker = init_start_config(cfg.start, cfg.n, shuffle_rng)
    adversary = (
        UniformAdversary(cfg.r)
        if cfg.adversary is AdversaryKind.UNIFORM
        else HotSpotAdversary()
    )
    samples = [Sample(t=0, tau=tracker.distance, good_cum=0, bad_cum=0, rounds=0)]
    sorter = Sorter(cfg.algorithm, working, order, tracker, alg_rng)
    clock = SimClock()
    good = bad = 0
    steps = cfg.steps
    interval = cfg.interval
    for _ in range(steps):
        i, j = sorter.next_query()
        result = compare_true(int(working.by_pos[i]), int(working.by_pos[j]), order)
        sorter.apply_result(result)
        report = mutate(adversary, working, order, tracker, adv_rng)
        good += report.good
        bad += report.bad
        clock.tick()
        if clock.t % interval == 0 or clock.t == steps:
            samples.append(
                Sample(
                    t=clock.t,
                    tau=tracker.distance,
                    good_cum=good,
                    bad_cum=bad,
                    rounds=sorter.round_completed(),
                )
            )
    summary = summarize_run(samples, cfg.n) if len(samples) >= 8 else None
    return RunRecord(config=cfg, samples=samples, summary=summary)


def check_engine_equivalence(
    kind: AlgorithmKind,
    adversary: AdversaryKind,
    n: int = 64,
    steps: int = 4096,
    seed: int = 0,
) -> CheckResult:
    """Fused loop vs interpreted loop on the same seed."""
    name = f"engine_{kind.value}_{adversary.value}"
    cfg = ExperimentConfig(
        n=n,
        algorithm=kind,
        adversary=adversary,
        r=3 if adversary is AdversaryKind.UNIFORM else 0,
        start=StartConfig.SHUFFLED,
        seed=seed,
        max_steps=steps,
        sample_interval=max(1, n // 20),
    )
    fast = run_once(cfg)
    slow = run_once_interpreted(cfg)
    if fast.samples != slow.samples:
        first_diff = next(
            (
                idx
                for idx, (a, b) in enumerate(zip(fast.samples, slow.samples))
                if a != b
            ),
            min(len(fast.samples), len(slow.samples)),
        )
        return CheckResult(
            name,
            False,
            f"sample series diverge at index {first_diff} (seed={seed})",
        )
    return CheckResult(name, True, f"{steps} steps, {len(fast.samples)} samples equal")


def check_tracker_in_run(
    kind: AlgorithmKind, n: int = 48, steps: int = 3000, seed: int = 1
) -> CheckResult:
    """Brute-force recount along a live run with mutations enabled."""
    name = f"tracked_run_{kind.value}"
    cfg = ExperimentConfig(
        n=n,
        algorithm=kind,
        adversary=AdversaryKind.UNIFORM,
        r=2,
        start=StartConfig.SHUFFLED,
        seed=seed,
        max_steps=steps,
    )
    shuffle_rng, alg_rng, adv_rng = derive_rngs(cfg.seed)
    working, order, tracker = init_start_config(cfg.start, cfg.n, shuffle_rng)
    adversary = UniformAdversary(cfg.r)
    sorter = Sorter(cfg.algorithm, working, order, tracker, alg_rng)
    for t in range(steps):
        i, j = sorter.next_query()
        result = compare_true(int(working.by_pos[i]), int(working.by_pos[j]), order)
        sorter.apply_result(result)
        mutate(adversary, working, order, tracker, adv_rng)
        if t % 53 == 0 and tracker.distance != brute_force_tau(working, order):
            return CheckResult(
                name, False, f"tracker diverged from brute force at t={t} (seed={seed})"
            )
    return CheckResult(name, True, f"n={n}, {steps} live steps verified")


def run_all(n: int = 64, ops: int = 10_000, seed: int = 0) -> list[CheckResult]:
    results = [check_tau_oracles(n=n, ops=ops, seed=seed)]
    for kind in AlgorithmKind:
        results.append(check_frozen_equivalence(kind, n=n, seed=seed))
    for kind in AlgorithmKind:
        for adversary in AdversaryKind:
            results.append(
                check_engine_equivalence(kind, adversary, n=n, seed=seed)
            )
    results.append(check_tracker_in_run(AlgorithmKind.QUICKSORT, seed=seed + 1))
    results.append(check_tracker_in_run(AlgorithmKind.BLOCKSORT, seed=seed + 2))
    return results
