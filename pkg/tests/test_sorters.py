import itertools
from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scsort.budgets import BudgetExceededError, Budgets
from scsort.sorters import (Algorithm, MaxStrategy, Regime, average_runtime_exact,
                            count_comparisons, max_runtime, mergesort_best_case,
                            mergesort_worst_case, runtime_table, validate_permutation)


def ref_quicksort(xs):
    """Independent recursive reference: returns (sorted list, comparisons)."""
    if len(xs) <= 1:
        return list(xs), 0
    pivot, rest = xs[0], xs[1:]
    lo = [x for x in rest if x < pivot]
    hi = [x for x in rest if x > pivot]
    lo_s, lo_c = ref_quicksort(lo)
    hi_s, hi_c = ref_quicksort(hi)
    return lo_s + [pivot] + hi_s, len(rest) + lo_c + hi_c


def ref_bubblesort(xs):
    xs = list(xs)
    comps = 0
    for bound in range(len(xs) - 1, 0, -1):
        swapped = False
        for j in range(bound):
            comps += 1
            if xs[j] > xs[j + 1]:
                xs[j], xs[j + 1] = xs[j + 1], xs[j]
                swapped = True
        if not swapped:
            break
    return xs, comps


@pytest.mark.parametrize("n", range(1, 8))
def test_quicksort_matches_sorting_reference(n):
    for p in itertools.permutations(range(1, n + 1)):
        out, comps = ref_quicksort(list(p))
        assert out == sorted(p)
        assert count_comparisons(Algorithm.QUICKSORT, p) == comps


@pytest.mark.parametrize("n", range(1, 7))
def test_bubblesort_matches_sorting_reference(n):
    for p in itertools.permutations(range(1, n + 1)):
        out, comps = ref_bubblesort(p)
        assert out == sorted(p)
        assert count_comparisons(Algorithm.BUBBLESORT_OPT, p) == comps


def test_quicksort_known_values():
    assert count_comparisons(Algorithm.QUICKSORT, (1, 2, 3)) == 3
    assert count_comparisons(Algorithm.QUICKSORT, (2, 1, 3)) == 2
    assert count_comparisons(Algorithm.QUICKSORT, tuple(range(1, 11))) == 45


def test_bubblesort_extremes():
    assert count_comparisons(Algorithm.BUBBLESORT_OPT, tuple(range(1, 6))) == 4
    assert count_comparisons(Algorithm.BUBBLESORT_OPT, tuple(range(5, 0, -1))) == 10


def test_mergesort_small_cases():
    assert count_comparisons(Algorithm.MERGESORT, (1, 2)) == 1
    assert count_comparisons(Algorithm.MERGESORT, (2, 1)) == 1
    # n=3: the singleton/pair split costs 1 for the pair and 1-2 to merge.
    assert average_runtime_exact(Algorithm.MERGESORT, 3) == Fraction(8, 3)


@pytest.mark.parametrize("n", range(2, 9))
def test_mergesort_extremes_match_recurrences(n):
    counts = runtime_table(Algorithm.MERGESORT, n)
    assert int(counts.max()) == mergesort_worst_case(n)
    assert int(counts.min()) == mergesort_best_case(n)


def test_mergesort_worst_case_values():
    assert [mergesort_worst_case(n) for n in (1, 2, 3, 4, 5, 10)] == [0, 1, 3, 5, 8, 25]


def test_m3_fixed_convention_costs():
    assert count_comparisons(Algorithm.M3QUICKSORT, (1, 2)) == 1
    for p in itertools.permutations((1, 2, 3)):
        assert count_comparisons(Algorithm.M3QUICKSORT, p) == 3


def test_m3_adaptive_convention_differs():
    fixed = [count_comparisons(Algorithm.M3QUICKSORT, p)
             for p in itertools.permutations((1, 2, 3))]
    adaptive = [count_comparisons(Algorithm.M3QUICKSORT, p, m3_adaptive_median=True)
                for p in itertools.permutations((1, 2, 3))]
    assert all(c in (4, 5) for c in adaptive)
    assert fixed != adaptive


@pytest.mark.parametrize("n", range(2, 9))
def test_quicksort_average_is_harmonic(n):
    h = sum(Fraction(1, i) for i in range(1, n + 1))
    assert average_runtime_exact(Algorithm.QUICKSORT, n) == 2 * (n + 1) * h - 4 * n


def test_average_runtime_is_exact_rational():
    avg = average_runtime_exact(Algorithm.QUICKSORT, 3)
    assert isinstance(avg, Fraction)
    assert avg == Fraction(8, 3)


def test_runtime_table_budget():
    with pytest.raises(BudgetExceededError):
        runtime_table(Algorithm.QUICKSORT, 9, max_n=8)
    with pytest.raises(BudgetExceededError):
        average_runtime_exact(Algorithm.QUICKSORT, 9, Budgets(enumeration_max_n=8))


def test_runtime_table_is_rank_indexed():
    counts = runtime_table(Algorithm.QUICKSORT, 4)
    assert len(counts) == factorial(4)
    assert counts[0] == count_comparisons(Algorithm.QUICKSORT, (1, 2, 3, 4))


def test_validate_permutation_rejects():
    for bad in ((1, 1, 2), (0, 1, 2), (2, 3, 4)):
        with pytest.raises(ValueError):
            validate_permutation(bad)


def test_max_runtime_closed_forms():
    value, witness = max_runtime(Algorithm.QUICKSORT, 10)
    assert value == 45 and witness == tuple(range(1, 11))
    value, witness = max_runtime(Algorithm.BUBBLESORT_OPT, 10)
    assert value == 45 and witness == tuple(range(10, 0, -1))
    with pytest.raises(ValueError):
        max_runtime(Algorithm.MERGESORT, 10, MaxStrategy.CLOSED_FORM)


@pytest.mark.parametrize("alg", [Algorithm.QUICKSORT, Algorithm.BUBBLESORT_OPT])
@pytest.mark.parametrize("n", range(2, 8))
def test_max_runtime_closed_form_matches_exhaustive(alg, n):
    assert max_runtime(alg, n)[0] == max_runtime(alg, n, MaxStrategy.EXHAUSTIVE)[0]


@pytest.mark.parametrize("alg", list(Algorithm))
@pytest.mark.parametrize("n", range(2, 8))
def test_max_runtime_hill_climb_finds_exhaustive_max(alg, n):
    exact, _ = max_runtime(alg, n, MaxStrategy.EXHAUSTIVE)
    found, witness = max_runtime(alg, n, MaxStrategy.HILL_CLIMB, seed=0, restarts=20)
    assert found == exact
    assert count_comparisons(alg, witness) == found


def test_regimes():
    assert Algorithm.MERGESORT.worst_regime is Regime.NLOGN
    assert Algorithm.QUICKSORT.worst_regime is Regime.QUADRATIC
    assert Algorithm.BUBBLESORT_OPT.avg_regime is Regime.QUADRATIC
    assert Algorithm.QUICKSORT.avg_regime is Regime.NLOGN


@given(st.integers(2, 8).flatmap(lambda n: st.permutations(list(range(1, n + 1)))),
       st.sampled_from(list(Algorithm)))
def test_counts_within_comparison_bounds(p, alg):
    n = len(p)
    c = count_comparisons(alg, p)
    assert 0 < c <= n * (n - 1) // 2
    if alg in (Algorithm.QUICKSORT, Algorithm.BUBBLESORT_OPT):
        assert c >= n - 1
    if alg is Algorithm.MERGESORT:
        assert mergesort_best_case(n) <= c <= mergesort_worst_case(n)
