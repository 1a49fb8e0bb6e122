"""Sorting strategies as resumable machines emitting one comparison per step.

Each machine stages the positions it wants compared; the caller performs the
truthful comparison against the evolving true order and feeds the result
back, upon which the machine swaps the working list as its classical
counterpart would and stages the next comparison.  Rounds repeat forever.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .model import TauTracker, TrueOrder, WorkingList

__all__ = ["AlgorithmKind", "BlockSchedule", "Sorter"]


class AlgorithmKind(enum.Enum):
    BUBBLE = "bubble"
    COCKTAIL = "cocktail"
    INSERTION = "insertion"
    QUICKSORT = "quicksort"
    BLOCKSORT = "blocksort"
    HYBRID = "hybrid"


_KIND_CODE = {
    AlgorithmKind.BUBBLE: K.KIND_BUBBLE,
    AlgorithmKind.COCKTAIL: K.KIND_COCKTAIL,
    AlgorithmKind.INSERTION: K.KIND_INSERTION,
    AlgorithmKind.QUICKSORT: K.KIND_QUICKSORT,
    AlgorithmKind.BLOCKSORT: K.KIND_BLOCKSORT,
    AlgorithmKind.HYBRID: K.KIND_HYBRID,
}


def block_size(n: int) -> int:
    """Block width for block sort.

    The first even number larger than 10 ln n that divides n, when one
    exists up to 100 ln n; otherwise the smallest even number larger than
    10 ln n (the final block is then allowed to run short).  Clamped to n
    for very small lists.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    low = 10.0 * math.log(n)
    first_even = int(math.floor(low)) + 1
    if first_even % 2:
        first_even += 1
    if first_even > n:
        return n
    b = first_even
    while b <= 100.0 * math.log(n) and b <= n:
        if n % b == 0:
            return b
        b += 2
    return first_even


@dataclass(frozen=True)
class BlockSchedule:
    """Overlapping block layout: width B, stride B/2, full list coverage."""

    n: int
    size: int
    blocks: tuple[tuple[int, int], ...]

    @classmethod
    def for_n(cls, n: int) -> "BlockSchedule":
        b = block_size(n)
        half = max(1, b // 2)
        blocks: list[tuple[int, int]] = []
        s = 0
        while True:
            blocks.append((s, min(s + b, n)))
            if s + b >= n:
                break
            s += half
        return cls(n=n, size=b, blocks=tuple(blocks))

    def covers_all_positions(self) -> bool:
        seen = np.zeros(self.n, dtype=bool)
        for lo, hi in self.blocks:
            seen[lo:hi] = True
        return bool(seen.all())

    def covers_all_adjacent_pairs(self) -> bool:
        """Every adjacent position pair must lie inside some single block,
        so block-local sorting can reach every local inversion."""
        for p in range(self.n - 1):
            if not any(lo <= p and p + 1 < hi for lo, hi in self.blocks):
                return False
        return True


class Sorter:
    """Resumable sorting machine bound to one simulation's state.

    ``next_query`` is pure; all bookkeeping (swaps, pivot parking, stack
    management, round restarts) happens while consuming a result, so a query
    is always staged and every step emits exactly one comparison.
    """

    def __init__(
        self,
        kind: AlgorithmKind,
        working: WorkingList,
        order: TrueOrder,
        tracker: TauTracker,
        rng: np.random.Generator,
    ):
        n = working.n
        if n < 2:
            raise ValueError(f"need n >= 2, got {n}")
        self.kind = kind
        self.n = n
        self._working = working
        self._order = order
        self._tracker = tracker
        self._rng = rng
        self.block_schedule: BlockSchedule | None = None
        # tau at the instant the most recent round ended, before the next
        # round's staging swaps; None until a round completes
        self.last_round_end_tau: int | None = None

        self.ms = np.zeros(K.MS_LEN, dtype=np.int64)
        if kind is AlgorithmKind.BLOCKSORT:
            self.block_schedule = BlockSchedule.for_n(n)
            rows = 1 + len(self.block_schedule.blocks)
        elif kind in (AlgorithmKind.QUICKSORT, AlgorithmKind.HYBRID):
            rows = 1
        else:
            rows = 1  # unused, kept allocated so kernel signatures stay uniform
        self.sub = np.zeros((rows, K.SUB_LEN), dtype=np.int64)
        self.stack = np.zeros((rows, 2 * (n + 4)), dtype=np.int64)
        self.sub[0, K.SUB_BASE_LO] = 0
        self.sub[0, K.SUB_BASE_HI] = n
        if self.block_schedule is not None:
            for row, (lo, hi) in enumerate(self.block_schedule.blocks, start=1):
                self.sub[row, K.SUB_BASE_LO] = lo
                self.sub[row, K.SUB_BASE_HI] = hi

        delta = K.machine_init(
            self.code,
            self.ms,
            self.sub,
            self.stack,
            working.by_pos,
            working.pos_of,
            order.rank_of,
            rng,
        )
        tracker.distance += int(delta)

    @property
    def code(self) -> int:
        return _KIND_CODE[self.kind]

    def next_query(self) -> tuple[int, int]:
        """Positions of the two elements to compare next."""
        return int(self.ms[K.MS_QI]), int(self.ms[K.MS_QJ])

    def apply_result(self, result: bool) -> None:
        """Feed the truthful outcome of comparing the staged positions."""
        distance_before = self._tracker.distance
        rounds_before = self.ms[K.MS_ROUNDS]
        delta = K.machine_apply(
            self.code,
            self.ms,
            self.sub,
            self.stack,
            self._working.by_pos,
            self._working.pos_of,
            self._order.rank_of,
            self._rng,
            bool(result),
        )
        self._tracker.distance += int(delta)
        if self.ms[K.MS_ROUNDS] != rounds_before:
            self.last_round_end_tau = distance_before + int(
                self.ms[K.MS_BOUNDARY_DELTA]
            )

    def round_completed(self) -> int:
        """Number of completed rounds of the repeated classical algorithm."""
        return int(self.ms[K.MS_ROUNDS])
