"""Comparison-instrumented sorting algorithms and extreme-runtime utilities.

Four deterministic sorters are instrumented to count element-vs-element
comparisons: classical first-pivot Quicksort, median-of-three Quicksort,
optimized (early-exit) Bubblesort, and top-down Mergesort.
"""

from __future__ import annotations

import enum
import itertools
import random
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .budgets import DEFAULT_BUDGETS, BudgetExceededError, Budgets

__all__ = [
    "Algorithm",
    "Regime",
    "count_comparisons",
    "runtime_table",
    "average_runtime_exact",
    "max_runtime",
    "MaxStrategy",
    "mergesort_worst_case",
    "mergesort_best_case",
    "validate_permutation",
]


class Regime(enum.Enum):
    QUADRATIC = "quadratic"
    NLOGN = "nlogn"


class Algorithm(enum.Enum):
    QUICKSORT = "quicksort"
    M3QUICKSORT = "m3quicksort"
    BUBBLESORT_OPT = "bubblesort"
    MERGESORT = "mergesort"

    @property
    def worst_regime(self) -> Regime:
        return Regime.NLOGN if self is Algorithm.MERGESORT else Regime.QUADRATIC

    @property
    def avg_regime(self) -> Regime:
        return Regime.QUADRATIC if self is Algorithm.BUBBLESORT_OPT else Regime.NLOGN


def validate_permutation(p) -> None:
    n = len(p)
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {list(p)!r}")


def _quicksort_comparisons(p) -> int:
    # First element is the pivot; partitioning a sublist of length n costs
    # exactly n-1 comparisons.  Iterative to dodge recursion limits.
    comps = 0
    stack = [list(p)]
    while stack:
        xs = stack.pop()
        n = len(xs)
        if n <= 1:
            continue
        pivot = xs[0]
        comps += n - 1
        less = [x for x in xs[1:] if x < pivot]
        greater = [x for x in xs[1:] if x > pivot]
        if len(less) > 1:
            stack.append(less)
        if len(greater) > 1:
            stack.append(greater)
    return comps


def _m3_comparisons(p, adaptive_median: bool = False) -> int:
    """Median-of-three Quicksort comparison count.

    Default convention: the first/middle/last sample costs a fixed 3
    comparisons (which fully orders the sample), and partitioning then
    touches only the n-3 unexamined elements, for n comparisons per level.
    This is the convention under which the modular recurrence reproduces
    the enumerated average case exactly.  With adaptive_median=True the
    sample costs 2 or 3 comparisons (2 when the first two decide it) and
    all n-1 non-pivot elements are partitioned.
    """
    comps = 0
    stack = [list(p)]
    while stack:
        xs = stack.pop()
        n = len(xs)
        if n <= 1:
            continue
        if n == 2:
            comps += 1
            continue
        i, j, k = 0, (n - 1) // 2, n - 1
        x, y, z = xs[i], xs[j], xs[k]
        lo, pivot, hi = sorted((x, y, z))
        if adaptive_median:
            comps += 2 if (x < y) == (y < z) else 3
            rest = [v for v in xs if v != pivot]
            comps += n - 1
            less = [v for v in rest if v < pivot]
            greater = [v for v in rest if v > pivot]
        else:
            comps += 3
            if n == 3:
                continue
            rest = [v for idx, v in enumerate(xs) if idx not in (i, j, k)]
            comps += n - 3
            less = [v for v in xs if v < pivot and (v == lo or v in rest)]
            greater = [v for v in xs if v > pivot and (v == hi or v in rest)]
        if len(less) > 1:
            stack.append(less)
        if len(greater) > 1:
            stack.append(greater)
    return comps


def _bubblesort_comparisons(p) -> int:
    # Knuth's optimized variant: shrinking passes, stop when a pass swaps
    # nothing.
    xs = list(p)
    n = len(xs)
    comps = 0
    for bound in range(n - 1, 0, -1):
        swapped = False
        for j in range(bound):
            comps += 1
            if xs[j] > xs[j + 1]:
                xs[j], xs[j + 1] = xs[j + 1], xs[j]
                swapped = True
        if not swapped:
            break
    return comps


def _merge_count(xs, counter) -> list:
    n = len(xs)
    if n <= 1:
        return list(xs)
    mid = n // 2
    left = _merge_count(xs[:mid], counter)
    right = _merge_count(xs[mid:], counter)
    out = []
    i = j = 0
    while i < len(left) and j < len(right):
        counter[0] += 1
        if left[i] <= right[j]:
            out.append(left[i])
            i += 1
        else:
            out.append(right[j])
            j += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out


def _mergesort_comparisons(p) -> int:
    counter = [0]
    _merge_count(list(p), counter)
    return counter[0]


def count_comparisons(alg: Algorithm, p, *, m3_adaptive_median: bool = False) -> int:
    """Exact comparison count of the given deterministic sorter on p."""
    validate_permutation(p)
    if alg is Algorithm.QUICKSORT:
        return _quicksort_comparisons(p)
    if alg is Algorithm.M3QUICKSORT:
        return _m3_comparisons(p, adaptive_median=m3_adaptive_median)
    if alg is Algorithm.BUBBLESORT_OPT:
        return _bubblesort_comparisons(p)
    return _mergesort_comparisons(p)


_COUNTERS = {
    Algorithm.QUICKSORT: _quicksort_comparisons,
    Algorithm.M3QUICKSORT: _m3_comparisons,
    Algorithm.BUBBLESORT_OPT: _bubblesort_comparisons,
    Algorithm.MERGESORT: _mergesort_comparisons,
}


@lru_cache(maxsize=16)
def runtime_table(alg: Algorithm, n: int, max_n: int = DEFAULT_BUDGETS.enumeration_max_n) -> np.ndarray:
    """Comparison counts of all N! permutations, indexed by Lehmer rank.

    Read-only int64 array; the heavy construction is cached per (alg, N).
    """
    if n > max_n:
        raise BudgetExceededError(
            f"runtime table for N={n} needs {factorial(n)} sorts "
            f"(enumeration cap is N<={max_n})"
        )
    counter = _COUNTERS[alg]
    counts = np.fromiter(
        (counter(p) for p in itertools.permutations(range(1, n + 1))),
        dtype=np.int64,
        count=factorial(n),
    )
    counts.setflags(write=False)
    return counts


def average_runtime_exact(alg: Algorithm, n: int, budgets: Budgets = DEFAULT_BUDGETS) -> Fraction:
    """Mean comparison count over all N! inputs, as an exact rational."""
    if n <= 1:
        return Fraction(0)
    if n > budgets.enumeration_max_n:
        raise BudgetExceededError(
            f"average over {factorial(n)} inputs exceeds enumeration cap "
            f"N<={budgets.enumeration_max_n}"
        )
    counts = runtime_table(alg, n, budgets.enumeration_max_n)
    return Fraction(int(counts.sum()), factorial(n))


def mergesort_worst_case(n: int) -> int:
    """W(n) = W(ceil(n/2)) + W(floor(n/2)) + n - 1."""
    if n <= 1:
        return 0
    return mergesort_worst_case(n // 2) + mergesort_worst_case(n - n // 2) + n - 1


def mergesort_best_case(n: int) -> int:
    """Fewest merge comparisons under this implementation's split."""
    if n <= 1:
        return 0
    return mergesort_best_case(n // 2) + mergesort_best_case(n - n // 2) + n // 2


class MaxStrategy(enum.Enum):
    CLOSED_FORM = "closed_form"
    EXHAUSTIVE = "exhaustive"
    HILL_CLIMB = "hill_climb"


def _hill_climb_max(objective, n: int, seed: int, restarts: int):
    """Best-improvement ascent over the all-transpositions neighborhood."""
    rng = random.Random(seed)
    best_val, best_witness = -1, None
    for r in range(restarts):
        cur = list(range(1, n + 1))
        if r > 0:
            rng.shuffle(cur)
        cur_val = objective(cur)
        improved = True
        while improved:
            improved = False
            best_step = None
            for i in range(n - 1):
                for j in range(i + 1, n):
                    cur[i], cur[j] = cur[j], cur[i]
                    v = objective(cur)
                    cur[i], cur[j] = cur[j], cur[i]
                    if v > cur_val and (best_step is None or v > best_step[0]):
                        best_step = (v, i, j)
            if best_step is not None:
                v, i, j = best_step
                cur[i], cur[j] = cur[j], cur[i]
                cur_val = v
                improved = True
        if cur_val > best_val:
            best_val, best_witness = cur_val, tuple(cur)
    return best_val, best_witness


def max_runtime(
    alg: Algorithm,
    n: int,
    strategy: MaxStrategy = MaxStrategy.CLOSED_FORM,
    seed: int = 0,
    restarts: int = 20,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> tuple[int, tuple[int, ...]]:
    """Maximum comparison count over inputs of size n, with a witness.

    CLOSED_FORM and EXHAUSTIVE return the true maximum; HILL_CLIMB returns
    a lower bound with the best witness found.
    """
    if n <= 1:
        return 0, tuple(range(1, n + 1))
    if strategy is MaxStrategy.CLOSED_FORM:
        if alg is Algorithm.QUICKSORT:
            witness = tuple(range(1, n + 1))
        elif alg is Algorithm.BUBBLESORT_OPT:
            witness = tuple(range(n, 0, -1))
        else:
            raise ValueError(f"no closed-form worst case for {alg.value}")
        return count_comparisons(alg, witness), witness
    if strategy is MaxStrategy.EXHAUSTIVE:
        counts = runtime_table(alg, n, budgets.enumeration_max_n)
        rank = int(np.argmax(counts))
        from .permutations import lehmer_unrank

        return int(counts[rank]), lehmer_unrank(rank, n)
    if strategy is MaxStrategy.HILL_CLIMB:
        val, witness = _hill_climb_max(lambda xs: count_comparisons(alg, xs), n, seed, restarts)
        return val, witness
    raise ValueError(f"unknown strategy {strategy!r}")
