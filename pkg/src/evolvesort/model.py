"""Permutation state for sorting under an evolving true order.

Two mutually-inverse array pairs describe the world: the hidden true order
(rank <-> element) and the algorithm's working list (position <-> element).
The Kendall tau distance between them -- the number of element pairs the two
orders disagree on -- is maintained incrementally: an adjacent swap on either
side changes it by exactly +/-1, a general transposition of the working list
by a value computable from the elements between the two positions.

Element ids are 0..n-1 and the true order starts as the identity; start
configurations perturb only the working list.  Distances are plain Python
ints (64-bit safe for any realistic n).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "StartConfig",
    "SwapEffect",
    "TrueOrder",
    "WorkingList",
    "TauTracker",
    "SimClock",
    "compare_true",
    "swap_adjacent_working",
    "swap_working_positions",
    "swap_adjacent_true",
    "recount_tau",
    "init_start_config",
]


class StartConfig(enum.Enum):
    """Initial arrangement of the working list relative to the true order."""

    SORTED = "sorted"
    SHUFFLED = "shuffled"
    HALF_CYCLIC_SHIFT = "half_cyclic_shift"
    REVERSED = "reversed"


class SwapEffect(enum.Enum):
    """Whether a mutation of the true order fixed or created an inversion."""

    GOOD = "good"
    BAD = "bad"


@dataclass
class TrueOrder:
    """The hidden evolving total order.

    ``by_rank[k]`` is the element currently holding rank ``k``;
    ``rank_of`` is its inverse.  Both are permutations of 0..n-1.
    """

    by_rank: np.ndarray
    rank_of: np.ndarray

    @classmethod
    def identity(cls, n: int) -> "TrueOrder":
        ids = np.arange(n, dtype=np.int64)
        return cls(by_rank=ids.copy(), rank_of=ids.copy())

    @property
    def n(self) -> int:
        return len(self.by_rank)

    def check_consistent(self) -> None:
        assert np.array_equal(self.rank_of[self.by_rank], np.arange(self.n))


@dataclass
class WorkingList:
    """The list the algorithm maintains.

    ``by_pos[p]`` is the element at position ``p``; ``pos_of`` is its inverse.
    """

    by_pos: np.ndarray
    pos_of: np.ndarray

    @classmethod
    def from_permutation(cls, perm: np.ndarray) -> "WorkingList":
        by_pos = np.asarray(perm, dtype=np.int64).copy()
        pos_of = np.empty_like(by_pos)
        pos_of[by_pos] = np.arange(len(by_pos), dtype=np.int64)
        return cls(by_pos=by_pos, pos_of=pos_of)

    @property
    def n(self) -> int:
        return len(self.by_pos)

    def check_consistent(self) -> None:
        assert np.array_equal(self.pos_of[self.by_pos], np.arange(self.n))


@dataclass
class TauTracker:
    """Current Kendall tau distance between working list and true order."""

    distance: int = 0


@dataclass
class SimClock:
    """Comparison counter; one tick per comparison performed."""

    t: int = 0

    def tick(self) -> None:
        self.t += 1


def compare_true(a: int, b: int, order: TrueOrder) -> bool:
    """True iff element ``a`` precedes element ``b`` in the true order.

    This is the only way an algorithm observes the hidden order; the caller
    must tick its clock exactly once per call.
    """
    n = order.n
    if a == b:
        raise ValueError(f"cannot compare element {a} with itself")
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"element ids must be in [0, {n}): got {a}, {b}")
    return bool(order.rank_of[a] < order.rank_of[b])


def swap_adjacent_working(
    p: int, working: WorkingList, order: TrueOrder, tracker: TauTracker
) -> None:
    """Exchange positions ``p`` and ``p+1`` of the working list.

    Only the swapped pair changes relative order, so the tau distance moves
    by exactly +/-1: -1 iff the pair was inverted beforehand.
    """
    n = working.n
    if not 0 <= p < n - 1:
        raise ValueError(f"adjacent swap position {p} out of range [0, {n - 1})")
    a = int(working.by_pos[p])
    b = int(working.by_pos[p + 1])
    inverted = order.rank_of[a] > order.rank_of[b]
    working.by_pos[p] = b
    working.by_pos[p + 1] = a
    working.pos_of[a] = p + 1
    working.pos_of[b] = p
    tracker.distance += -1 if inverted else 1


def swap_working_positions(
    i: int, j: int, working: WorkingList, order: TrueOrder, tracker: TauTracker
) -> None:
    """Exchange arbitrary positions ``i`` and ``j`` of the working list.

    Used by partition-based sorters.  Every element strictly between the two
    positions flips its relative order against both swapped elements, so the
    update walks the gap once (O(|i-j|)).
    """
    n = working.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"positions must be in [0, {n}): got {i}, {j}")
    if i == j:
        return
    if i > j:
        i, j = j, i
    a = int(working.by_pos[i])
    b = int(working.by_pos[j])
    ra = int(order.rank_of[a])
    rb = int(order.rank_of[b])
    delta = 1 if ra < rb else -1
    rank_of = order.rank_of
    by_pos = working.by_pos
    for k in range(i + 1, j):
        rc = int(rank_of[by_pos[k]])
        delta += 1 if ra < rc else -1
        delta += 1 if rb > rc else -1
    by_pos[i] = b
    by_pos[j] = a
    working.pos_of[a] = j
    working.pos_of[b] = i
    tracker.distance += delta


def swap_adjacent_true(
    k: int, order: TrueOrder, working: WorkingList, tracker: TauTracker
) -> SwapEffect:
    """Exchange the elements of true ranks ``k`` and ``k+1``.

    Returns GOOD iff the mutation fixed an inversion (distance decreased).
    """
    n = order.n
    if not 0 <= k < n - 1:
        raise ValueError(f"adjacent rank {k} out of range [0, {n - 1})")
    a = int(order.by_rank[k])
    b = int(order.by_rank[k + 1])
    order.by_rank[k] = b
    order.by_rank[k + 1] = a
    order.rank_of[a] = k + 1
    order.rank_of[b] = k
    if working.pos_of[a] > working.pos_of[b]:
        tracker.distance -= 1
        return SwapEffect.GOOD
    tracker.distance += 1
    return SwapEffect.BAD


def _merge_count(seq: list[int]) -> tuple[list[int], int]:
    if len(seq) < 2:
        return seq, 0
    mid = len(seq) // 2
    left, cl = _merge_count(seq[:mid])
    right, cr = _merge_count(seq[mid:])
    merged: list[int] = []
    inv = cl + cr
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            inv += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, inv


def recount_tau(working: WorkingList, order: TrueOrder) -> int:
    """Exact inversion count between working list and true order.

    Merge-counts the sequence of true ranks read in list order; O(n log n)
    and pure.  Reference for the incremental tracker.
    """
    seq = [int(r) for r in order.rank_of[working.by_pos]]
    _, inv = _merge_count(seq)
    return inv


def init_start_config(
    kind: StartConfig, n: int, rng: np.random.Generator
) -> tuple[WorkingList, TrueOrder, TauTracker]:
    """Build the initial (working list, true order, tau tracker) triple.

    The true order is the identity; the working list is the identity
    (SORTED), a uniform random permutation drawn from ``rng`` (SHUFFLED),
    the identity rotated by floor(n/2) (HALF_CYCLIC_SHIFT), or the reversal
    (REVERSED).
    """
    if n < 2:
        raise ValueError(f"need at least two elements, got n={n}")
    order = TrueOrder.identity(n)
    ids = np.arange(n, dtype=np.int64)
    if kind is StartConfig.SORTED:
        perm = ids
    elif kind is StartConfig.SHUFFLED:
        perm = rng.permutation(n).astype(np.int64)
    elif kind is StartConfig.HALF_CYCLIC_SHIFT:
        h = n // 2
        perm = np.concatenate([ids[h:], ids[:h]])
    elif kind is StartConfig.REVERSED:
        perm = ids[::-1]
    else:
        raise ValueError(f"unknown start configuration: {kind!r}")
    working = WorkingList.from_permutation(perm)
    tracker = TauTracker(distance=recount_tau(working, order))
    return working, order, tracker
