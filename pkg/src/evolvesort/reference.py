"""Classical sorting implementations driven one comparison at a time.

These are straight transcriptions of the textbook algorithms as Python
generators (recursive where the algorithm is recursive), deliberately
independent of the flat-array machines in ``_kernels``.  With a frozen true
order, a machine and its classical counterpart must emit identical
comparison sequences, make identical swaps, and finish rounds at the same
step -- that equivalence is the main oracle for the machine code.

The generators yield the position pair to compare and receive the truthful
result via ``send``.  They mutate the plain list they are given in place.
"""

from __future__ import annotations

import numpy as np

from .algorithms import AlgorithmKind, BlockSchedule

__all__ = ["ClassicalSorter"]


def _bubble_round(arr):
    n = len(arr)
    for _ in range(n - 1):
        for i in range(n - 1):
            result = yield (i, i + 1)
            if not result:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]


def _cocktail_round(arr):
    n = len(arr)
    for _ in range(max(1, (n - 2) // 2)):
        for i in range(n - 1):
            result = yield (i, i + 1)
            if not result:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
        for i in range(n - 2, -1, -1):
            result = yield (i, i + 1)
            if not result:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]


def _insertion_round(arr):
    n = len(arr)
    for _ in range(max(1, n - 2)):
        for i in range(1, n):
            p = i
            while p > 0:
                result = yield (p, p - 1)
                if not result:
                    break
                arr[p], arr[p - 1] = arr[p - 1], arr[p]
                p -= 1


def _quicksort_round(arr, lo, hi, rng):
    if hi - lo < 2:
        return
    p = lo + int(rng.random() * (hi - lo))
    arr[p], arr[hi - 1] = arr[hi - 1], arr[p]
    i = lo - 1
    for j in range(lo, hi - 1):
        result = yield (j, hi - 1)
        if result:
            i += 1
            arr[i], arr[j] = arr[j], arr[i]
    q = i + 1
    arr[q], arr[hi - 1] = arr[hi - 1], arr[q]
    left = (lo, q)
    right = (q + 1, hi)
    first, second = (left, right) if q - lo <= hi - q - 1 else (right, left)
    yield from _quicksort_round(arr, first[0], first[1], rng)
    yield from _quicksort_round(arr, second[0], second[1], rng)


class ClassicalSorter:
    """Reference sorter with the same drive protocol as the machines.

    ``arr`` is the working list (element ids in position order), mutated in
    place.  ``rounds`` counts completed classical runs; for block sort it
    counts completed whole-list quicksorts.
    """

    def __init__(self, kind: AlgorithmKind, arr: list[int], rng: np.random.Generator):
        self.kind = kind
        self.arr = arr
        self.rounds = 0
        n = len(arr)
        if kind is AlgorithmKind.BLOCKSORT:
            gen = self._endless_blocksort(rng, BlockSchedule.for_n(n).blocks)
        elif kind is AlgorithmKind.QUICKSORT:
            gen = self._endless_quicksort(rng)
        elif kind is AlgorithmKind.HYBRID:
            gen = self._endless_hybrid(rng)
        else:
            gen = self._endless_quadratic(kind)
        self._gen = gen
        self._query = gen.send(None)

    def _endless_quadratic(self, kind):
        maker = {
            AlgorithmKind.BUBBLE: _bubble_round,
            AlgorithmKind.COCKTAIL: _cocktail_round,
            AlgorithmKind.INSERTION: _insertion_round,
        }[kind]
        while True:
            yield from maker(self.arr)
            self.rounds += 1

    def _endless_quicksort(self, rng):
        while True:
            yield from _quicksort_round(self.arr, 0, len(self.arr), rng)
            self.rounds += 1

    def _endless_blocksort(self, rng, blocks):
        # one whole-list round, then one round per block, forever;
        # rounds counts the whole-list runs
        while True:
            yield from _quicksort_round(self.arr, 0, len(self.arr), rng)
            self.rounds += 1
            for lo, hi in blocks:
                yield from _quicksort_round(self.arr, lo, hi, rng)

    def _endless_hybrid(self, rng):
        yield from _quicksort_round(self.arr, 0, len(self.arr), rng)
        self.rounds = 1
        while True:
            yield from _insertion_round(self.arr)
            self.rounds += 1

    def next_query(self) -> tuple[int, int]:
        return self._query

    def apply_result(self, result: bool) -> None:
        self._query = self._gen.send(result)

    def round_completed(self) -> int:
        return self.rounds
