"""Compiled inner loop shared by the step-level API and the fused runner.

All simulation state lives in flat int64 arrays so the whole
comparison/mutation loop can run inside one nopython region.  The Python
classes in ``model`` and ``algorithms`` wrap the same arrays and kernels, so
there is exactly one implementation of every state machine.

Integer draws use ``int(rng.random() * m)`` throughout (never ``integers``)
so that the compiled and interpreted paths consume the underlying bit stream
identically.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# algorithm codes
KIND_BUBBLE = 0
KIND_COCKTAIL = 1
KIND_INSERTION = 2
KIND_QUICKSORT = 3
KIND_BLOCKSORT = 4
KIND_HYBRID = 5

# adversary codes
ADV_UNIFORM = 0
ADV_HOTSPOT = 1

# machine scalar slots (ms vector)
MS_QI = 0  # staged comparison: position i
MS_QJ = 1  # staged comparison: position j
MS_ROUNDS = 2  # completed rounds of the algorithm
MS_A = 3  # bubble: pass index | cocktail: cycle index | insertion: sweep index
MS_B = 4  # bubble/cocktail: scan position | insertion: element index
MS_C = 5  # cocktail: direction (0 fwd, 1 back) | insertion: current position of x
MS_ACTIVE = 6  # blocksort: index of the machine whose round is running
MS_PHASE = 7  # hybrid: 0 = quicksort round, 1 = insertion forever
MS_BOUNDARY_DELTA = 8  # tau delta of the round-completing apply, pre-restart
MS_LEN = 9

# quicksort submachine slots (one row of the sub matrix)
SUB_LO = 0  # current subrange [lo, hi)
SUB_HI = 1
SUB_I = 2  # boundary of the <=pivot region
SUB_J = 3  # scan position
SUB_TOP = 4  # stack size, in (lo, hi) pairs
SUB_BASE_LO = 5  # full range restarted every round
SUB_BASE_HI = 6
SUB_ROUNDS = 7
SUB_QI = 8  # this machine's staged comparison
SUB_QJ = 9
SUB_LEN = 10

# accumulator slots
ACC_DIST = 0
ACC_GOOD = 1
ACC_BAD = 2
ACC_LEN = 3


@njit(cache=True, nogil=True)
def swap_adjacent_working(by_pos, pos_of, rank_of, p):
    """Swap positions p, p+1 of the working list; return the tau delta."""
    a = by_pos[p]
    b = by_pos[p + 1]
    by_pos[p] = b
    by_pos[p + 1] = a
    pos_of[a] = p + 1
    pos_of[b] = p
    if rank_of[a] > rank_of[b]:
        return -1
    return 1


@njit(cache=True, nogil=True)
def swap_working_positions(by_pos, pos_of, rank_of, i, j):
    """Swap arbitrary positions i, j of the working list; return tau delta."""
    if i == j:
        return 0
    if i > j:
        i, j = j, i
    a = by_pos[i]
    b = by_pos[j]
    ra = rank_of[a]
    rb = rank_of[b]
    delta = 1 if ra < rb else -1
    for k in range(i + 1, j):
        rc = rank_of[by_pos[k]]
        if ra < rc:
            delta += 1
        else:
            delta -= 1
        if rb > rc:
            delta += 1
        else:
            delta -= 1
    by_pos[i] = b
    by_pos[j] = a
    pos_of[a] = j
    pos_of[b] = i
    return delta


@njit(cache=True, nogil=True)
def swap_adjacent_true(by_rank, rank_of, pos_of, k):
    """Swap true ranks k, k+1; return tau delta (-1 means a fixed inversion)."""
    a = by_rank[k]
    b = by_rank[k + 1]
    by_rank[k] = b
    by_rank[k + 1] = a
    rank_of[a] = k + 1
    rank_of[b] = k
    if pos_of[a] > pos_of[b]:
        return -1
    return 1


@njit(cache=True, nogil=True)
def mutate_uniform(by_rank, rank_of, pos_of, acc, r, rng):
    """r independent uniform adjacent-rank swaps of the true order."""
    n = by_rank.shape[0]
    for _ in range(r):
        k = int(rng.random() * (n - 1))
        d = swap_adjacent_true(by_rank, rank_of, pos_of, k)
        acc[ACC_DIST] += d
        if d < 0:
            acc[ACC_GOOD] += 1
        else:
            acc[ACC_BAD] += 1


@njit(cache=True, nogil=True)
def mutate_hotspot(by_rank, rank_of, pos_of, acc, rng):
    """Walk one uniformly-chosen element a geometric(1/2) number of ranks.

    Direction is a fair coin; each continuation bit costs one draw.  At the
    rank boundary the walk truncates: flips continue, swaps are suppressed.
    """
    n = by_rank.shape[0]
    x = int(rng.random() * n)
    down = rng.random() < 0.5
    while rng.random() < 0.5:
        k = rank_of[x]
        if down:
            if k > 0:
                d = swap_adjacent_true(by_rank, rank_of, pos_of, k - 1)
                acc[ACC_DIST] += d
                if d < 0:
                    acc[ACC_GOOD] += 1
                else:
                    acc[ACC_BAD] += 1
        else:
            if k < n - 1:
                d = swap_adjacent_true(by_rank, rank_of, pos_of, k)
                acc[ACC_DIST] += d
                if d < 0:
                    acc[ACC_GOOD] += 1
                else:
                    acc[ACC_BAD] += 1


@njit(cache=True, nogil=True)
def _qs_push(sub, stack, m, lo, hi):
    if hi - lo >= 2:
        t = sub[m, SUB_TOP]
        stack[m, 2 * t] = lo
        stack[m, 2 * t + 1] = hi
        sub[m, SUB_TOP] = t + 1


@njit(cache=True, nogil=True)
def _qs_stage(sub, stack, m, by_pos, pos_of, rank_of, rng):
    """Pop the next subrange and stage its first comparison.

    Chooses a pivot position uniformly in the subrange, parks the pivot at
    the top end, and stages the first scan comparison.  Returns (tau delta,
    staged flag); staged is False when the stack is empty (round finished).
    """
    if sub[m, SUB_TOP] == 0:
        return 0, False
    t = sub[m, SUB_TOP] - 1
    lo = stack[m, 2 * t]
    hi = stack[m, 2 * t + 1]
    sub[m, SUB_TOP] = t
    p = lo + int(rng.random() * (hi - lo))
    delta = swap_working_positions(by_pos, pos_of, rank_of, p, hi - 1)
    sub[m, SUB_LO] = lo
    sub[m, SUB_HI] = hi
    sub[m, SUB_I] = lo - 1
    sub[m, SUB_J] = lo
    sub[m, SUB_QI] = lo
    sub[m, SUB_QJ] = hi - 1
    return delta, True


@njit(cache=True, nogil=True)
def _qs_apply(sub, stack, m, by_pos, pos_of, rank_of, rng, result):
    """Consume one comparison result of a partition scan.

    Returns (tau delta, round_done).  When the current subrange finishes,
    its children are pushed smaller-first-out and the next subrange is
    staged; round_done reports an emptied stack (caller restarts or
    switches).
    """
    delta = 0
    lo = sub[m, SUB_LO]
    hi = sub[m, SUB_HI]
    i = sub[m, SUB_I]
    j = sub[m, SUB_J]
    if result:  # scanned element precedes the pivot
        i += 1
        delta += swap_working_positions(by_pos, pos_of, rank_of, i, j)
        sub[m, SUB_I] = i
    j += 1
    if j < hi - 1:
        sub[m, SUB_J] = j
        sub[m, SUB_QI] = j
        return delta, False
    # scan finished: place the pivot between the two sides
    q = i + 1
    delta += swap_working_positions(by_pos, pos_of, rank_of, q, hi - 1)
    left_size = q - lo
    right_size = hi - (q + 1)
    if left_size <= right_size:
        _qs_push(sub, stack, m, q + 1, hi)
        _qs_push(sub, stack, m, lo, q)
    else:
        _qs_push(sub, stack, m, lo, q)
        _qs_push(sub, stack, m, q + 1, hi)
    d2, staged = _qs_stage(sub, stack, m, by_pos, pos_of, rank_of, rng)
    return delta + d2, not staged


@njit(cache=True, nogil=True)
def _qs_restart(sub, stack, m, by_pos, pos_of, rank_of, rng):
    """Begin a new round on the machine's base range."""
    sub[m, SUB_ROUNDS] += 1
    _qs_push(sub, stack, m, sub[m, SUB_BASE_LO], sub[m, SUB_BASE_HI])
    delta, _ = _qs_stage(sub, stack, m, by_pos, pos_of, rank_of, rng)
    return delta


@njit(cache=True, nogil=True)
def _apply_bubble(ms, n, by_pos, pos_of, rank_of, result):
    delta = 0
    i = ms[MS_B]
    if not result:
        delta = swap_adjacent_working(by_pos, pos_of, rank_of, i)
    i += 1
    if i == n - 1:
        i = 0
        ms[MS_A] += 1
        if ms[MS_A] == n - 1:
            ms[MS_A] = 0
            ms[MS_ROUNDS] += 1
            ms[MS_BOUNDARY_DELTA] = delta
    ms[MS_B] = i
    ms[MS_QI] = i
    ms[MS_QJ] = i + 1
    return delta


@njit(cache=True, nogil=True)
def _apply_cocktail(ms, n, by_pos, pos_of, rank_of, result):
    delta = 0
    i = ms[MS_B]
    if not result:
        delta = swap_adjacent_working(by_pos, pos_of, rank_of, i)
    if ms[MS_C] == 0:
        i += 1
        if i == n - 1:
            ms[MS_C] = 1
            i = n - 2
    else:
        i -= 1
        if i < 0:
            ms[MS_C] = 0
            i = 0
            ms[MS_A] += 1
            cycles = (n - 2) // 2
            if cycles < 1:
                cycles = 1
            if ms[MS_A] == cycles:
                ms[MS_A] = 0
                ms[MS_ROUNDS] += 1
                ms[MS_BOUNDARY_DELTA] = delta
    ms[MS_B] = i
    ms[MS_QI] = i
    ms[MS_QJ] = i + 1
    return delta


@njit(cache=True, nogil=True)
def _apply_insertion(ms, n, by_pos, pos_of, rank_of, result):
    delta = 0
    if result:  # x precedes its predecessor: out of order, keep walking left
        p = ms[MS_C]
        delta = swap_adjacent_working(by_pos, pos_of, rank_of, p - 1)
        p -= 1
        if p > 0:
            ms[MS_C] = p
            ms[MS_QI] = p
            ms[MS_QJ] = p - 1
            return delta
    i = ms[MS_B] + 1
    if i == n:
        i = 1
        ms[MS_A] += 1
        sweeps = n - 2
        if sweeps < 1:
            sweeps = 1
        if ms[MS_A] == sweeps:
            ms[MS_A] = 0
            ms[MS_ROUNDS] += 1
            ms[MS_BOUNDARY_DELTA] = delta
    ms[MS_B] = i
    ms[MS_C] = i
    ms[MS_QI] = i
    ms[MS_QJ] = i - 1
    return delta


@njit(cache=True, nogil=True)
def machine_init(kind, ms, sub, stack, by_pos, pos_of, rank_of, rng):
    """Initialize a machine and stage its first comparison.

    For blocksort the caller must pre-fill each submachine row's base range
    (row 0 = whole list, rows 1.. = blocks).  Returns the tau delta of any
    staging swaps (pivot parking).
    """
    n = by_pos.shape[0]
    delta = 0
    ms[MS_ROUNDS] = 0
    if kind == KIND_BUBBLE or kind == KIND_COCKTAIL:
        ms[MS_A] = 0
        ms[MS_B] = 0
        ms[MS_C] = 0
        ms[MS_QI] = 0
        ms[MS_QJ] = 1
    elif kind == KIND_INSERTION:
        ms[MS_A] = 0
        ms[MS_B] = 1
        ms[MS_C] = 1
        ms[MS_QI] = 1
        ms[MS_QJ] = 0
    elif kind == KIND_QUICKSORT or kind == KIND_HYBRID:
        ms[MS_PHASE] = 0
        sub[0, SUB_TOP] = 0
        sub[0, SUB_ROUNDS] = 0
        sub[0, SUB_BASE_LO] = 0
        sub[0, SUB_BASE_HI] = n
        _qs_push(sub, stack, 0, 0, n)
        d, _ = _qs_stage(sub, stack, 0, by_pos, pos_of, rank_of, rng)
        delta += d
        ms[MS_QI] = sub[0, SUB_QI]
        ms[MS_QJ] = sub[0, SUB_QJ]
    else:  # KIND_BLOCKSORT: machines take turns, one full round at a time
        nm = sub.shape[0]
        for m in range(nm):
            sub[m, SUB_TOP] = 0
            sub[m, SUB_ROUNDS] = 0
        ms[MS_ACTIVE] = 0
        _qs_push(sub, stack, 0, sub[0, SUB_BASE_LO], sub[0, SUB_BASE_HI])
        d, _ = _qs_stage(sub, stack, 0, by_pos, pos_of, rank_of, rng)
        delta += d
        ms[MS_QI] = sub[0, SUB_QI]
        ms[MS_QJ] = sub[0, SUB_QJ]
    return delta


@njit(cache=True, nogil=True)
def machine_apply(kind, ms, sub, stack, by_pos, pos_of, rank_of, rng, result):
    """Consume the staged comparison's result; stage the next comparison.

    Returns the tau delta of all working-list swaps performed.
    """
    n = by_pos.shape[0]
    if kind == KIND_BUBBLE:
        return _apply_bubble(ms, n, by_pos, pos_of, rank_of, result)
    if kind == KIND_COCKTAIL:
        return _apply_cocktail(ms, n, by_pos, pos_of, rank_of, result)
    if kind == KIND_INSERTION:
        return _apply_insertion(ms, n, by_pos, pos_of, rank_of, result)
    if kind == KIND_QUICKSORT:
        delta, done = _qs_apply(sub, stack, 0, by_pos, pos_of, rank_of, rng, result)
        if done:
            ms[MS_BOUNDARY_DELTA] = delta
            delta += _qs_restart(sub, stack, 0, by_pos, pos_of, rank_of, rng)
            ms[MS_ROUNDS] = sub[0, SUB_ROUNDS]
        ms[MS_QI] = sub[0, SUB_QI]
        ms[MS_QJ] = sub[0, SUB_QJ]
        return delta
    if kind == KIND_HYBRID:
        if ms[MS_PHASE] == 0:
            delta, done = _qs_apply(
                sub, stack, 0, by_pos, pos_of, rank_of, rng, result
            )
            if done:  # first quicksort round over: insertion from here on
                ms[MS_PHASE] = 1
                ms[MS_ROUNDS] = 1
                ms[MS_BOUNDARY_DELTA] = delta
                ms[MS_A] = 0
                ms[MS_B] = 1
                ms[MS_C] = 1
                ms[MS_QI] = 1
                ms[MS_QJ] = 0
            else:
                ms[MS_QI] = sub[0, SUB_QI]
                ms[MS_QJ] = sub[0, SUB_QJ]
            return delta
        return _apply_insertion(ms, n, by_pos, pos_of, rank_of, result)
    # KIND_BLOCKSORT: whole-list and per-block quicksort rounds take turns
    # (0 = whole list, then each block in order, then the whole list again);
    # only one machine is ever mid-round, so rounds are classical runs
    nm = sub.shape[0]
    m = ms[MS_ACTIVE]
    delta, done = _qs_apply(sub, stack, m, by_pos, pos_of, rank_of, rng, result)
    if done:
        sub[m, SUB_ROUNDS] += 1
        if m == 0:
            ms[MS_BOUNDARY_DELTA] = delta
            ms[MS_ROUNDS] = sub[0, SUB_ROUNDS]
        nxt = (m + 1) % nm
        ms[MS_ACTIVE] = nxt
        _qs_push(sub, stack, nxt, sub[nxt, SUB_BASE_LO], sub[nxt, SUB_BASE_HI])
        d2, _ = _qs_stage(sub, stack, nxt, by_pos, pos_of, rank_of, rng)
        delta += d2
        m = nxt
    ms[MS_QI] = sub[m, SUB_QI]
    ms[MS_QJ] = sub[m, SUB_QJ]
    return delta


@njit(cache=True, nogil=True)
def run_loop(
    kind,
    adv_kind,
    r,
    max_steps,
    interval,
    by_rank,
    rank_of,
    by_pos,
    pos_of,
    acc,
    ms,
    sub,
    stack,
    alg_rng,
    adv_rng,
    out_t,
    out_tau,
    out_good,
    out_bad,
    out_rounds,
    start_idx,
):
    """Comparison -> apply -> mutation loop; samples every ``interval`` steps
    and at ``max_steps``.  Returns the number of sample slots used."""
    si = start_idx
    for t in range(1, max_steps + 1):
        a = by_pos[ms[MS_QI]]
        b = by_pos[ms[MS_QJ]]
        result = rank_of[a] < rank_of[b]
        acc[ACC_DIST] += machine_apply(
            kind, ms, sub, stack, by_pos, pos_of, rank_of, alg_rng, result
        )
        if adv_kind == ADV_UNIFORM:
            mutate_uniform(by_rank, rank_of, pos_of, acc, r, adv_rng)
        else:
            mutate_hotspot(by_rank, rank_of, pos_of, acc, adv_rng)
        if t % interval == 0 or t == max_steps:
            out_t[si] = t
            out_tau[si] = acc[ACC_DIST]
            out_good[si] = acc[ACC_GOOD]
            out_bad[si] = acc[ACC_BAD]
            out_rounds[si] = ms[MS_ROUNDS]
            si += 1
    return si
