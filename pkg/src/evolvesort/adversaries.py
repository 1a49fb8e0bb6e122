"""The two mutation processes applied to the true order after every
comparison, with good/bad (inversion-fixing vs inversion-creating) tallies.

The interpreted implementations here consume the random stream with exactly
the same draws as the compiled kernels (``int(rng.random() * m)`` for
integers, one ``random()`` per coin), so a simulation stepped through this
module reproduces the fused loop bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SwapEffect, TauTracker, TrueOrder, WorkingList, swap_adjacent_true

__all__ = [
    "UniformAdversary",
    "HotSpotAdversary",
    "MutationReport",
    "HOTSPOT_BOUNDARY",
    "mutate",
    "mutate_uniform",
    "mutate_hotspot",
]

# Behavior when a hot-spot walk points past rank 0 or n-1: the coin keeps
# flipping but swaps are suppressed (the walk truncates; no wraparound, no
# direction redraw).  Echoed into output headers.
HOTSPOT_BOUNDARY = "truncate"


@dataclass(frozen=True)
class UniformAdversary:
    """r independent uniformly-random adjacent swaps per comparison."""

    r: int

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"swap rate must be >= 0, got {self.r}")


@dataclass(frozen=True)
class HotSpotAdversary:
    """One element drifts a geometric(1/2) number of ranks per comparison."""


@dataclass(frozen=True)
class MutationReport:
    swaps_applied: int
    good: int
    bad: int

    def __post_init__(self):
        assert self.good + self.bad == self.swaps_applied


def mutate_uniform(
    adv: UniformAdversary,
    working: WorkingList,
    order: TrueOrder,
    tracker: TauTracker,
    rng: np.random.Generator,
) -> MutationReport:
    n = order.n
    good = bad = 0
    for _ in range(adv.r):
        k = int(rng.random() * (n - 1))
        if swap_adjacent_true(k, order, working, tracker) is SwapEffect.GOOD:
            good += 1
        else:
            bad += 1
    return MutationReport(swaps_applied=adv.r, good=good, bad=bad)


def mutate_hotspot(
    adv: HotSpotAdversary,
    working: WorkingList,
    order: TrueOrder,
    tracker: TauTracker,
    rng: np.random.Generator,
) -> MutationReport:
    n = order.n
    x = int(rng.random() * n)
    down = rng.random() < 0.5
    good = bad = 0
    while rng.random() < 0.5:
        k = int(order.rank_of[x])
        if down:
            if k > 0:
                effect = swap_adjacent_true(k - 1, order, working, tracker)
            else:
                continue
        else:
            if k < n - 1:
                effect = swap_adjacent_true(k, order, working, tracker)
            else:
                continue
        if effect is SwapEffect.GOOD:
            good += 1
        else:
            bad += 1
    return MutationReport(swaps_applied=good + bad, good=good, bad=bad)


def mutate(
    adv: UniformAdversary | HotSpotAdversary,
    working: WorkingList,
    order: TrueOrder,
    tracker: TauTracker,
    rng: np.random.Generator,
) -> MutationReport:
    """Apply one mutation event (the per-comparison adversary move)."""
    if isinstance(adv, UniformAdversary):
        return mutate_uniform(adv, working, order, tracker, rng)
    if isinstance(adv, HotSpotAdversary):
        return mutate_hotspot(adv, working, order, tracker, rng)
    raise TypeError(f"unknown adversary: {adv!r}")
