import itertools
from fractions import Fraction
from math import factorial

import pytest

from scsort.budgets import BudgetExceededError, Budgets
from scsort.dataset import Source
from scsort.oracle import clear_caches, oracle_cost, sc_exhaustive, sc_hillclimb
from scsort.perturb import avg_perturbed_runtime_exact, perturbed_group
from scsort.sorters import Algorithm, average_runtime_exact, count_comparisons


def brute_force_sc(alg, n, k):
    best = Fraction(-1)
    for p in itertools.permutations(range(1, n + 1)):
        total = sum(count_comparisons(alg, m) for m in perturbed_group(p, k))
        best = max(best, Fraction(total, factorial(n) // factorial(n - k)))
    return best


def test_hand_value_3_2():
    rec = sc_exhaustive(Algorithm.QUICKSORT, 3, 2)
    assert rec.value == pytest.approx(float(Fraction(17, 6)), abs=1e-12)
    assert rec.source is Source.EMPIRICAL_EXACT


@pytest.mark.parametrize("alg", [Algorithm.QUICKSORT, Algorithm.BUBBLESORT_OPT])
@pytest.mark.parametrize("n", [4, 5])
def test_exhaustive_matches_brute_force(alg, n):
    for k in range(1, n + 1):
        want = brute_force_sc(alg, n, k)
        got = sc_exhaustive(alg, n, k)
        assert got.value == pytest.approx(float(want), abs=1e-12)


@pytest.mark.parametrize("alg", list(Algorithm))
def test_full_degree_equals_average_case(alg):
    rec = sc_exhaustive(alg, 6, 6)
    assert rec.value == pytest.approx(float(average_runtime_exact(alg, 6)), abs=1e-12)


@pytest.mark.parametrize("n", range(3, 7))
def test_sc_monotone_non_increasing_in_k(n):
    values = [sc_exhaustive(Algorithm.QUICKSORT, n, k).value for k in range(1, n + 1)]
    assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


def test_degree_one_is_worst_case():
    rec = sc_exhaustive(Algorithm.QUICKSORT, 6, 1)
    assert rec.value == 15.0


def test_witness_achieves_value():
    rec, witness = sc_exhaustive(Algorithm.QUICKSORT, 5, 2, with_witness=True)
    avg = avg_perturbed_runtime_exact(Algorithm.QUICKSORT, witness, 2)
    assert rec.value == pytest.approx(float(avg), abs=1e-12)


@pytest.mark.parametrize("n", range(3, 7))
def test_hillclimb_finds_exhaustive_optimum(n):
    for k in range(2, n + 1):
        exact = sc_exhaustive(Algorithm.QUICKSORT, n, k)
        found = sc_hillclimb(Algorithm.QUICKSORT, n, k, restarts=10)
        assert found.value == pytest.approx(exact.value, abs=1e-12)
        assert found.source is Source.EMPIRICAL_HILLCLIMB


def test_hillclimb_witness_consistent():
    rec, witness = sc_hillclimb(Algorithm.MERGESORT, 6, 3, restarts=5, with_witness=True)
    avg = avg_perturbed_runtime_exact(Algorithm.MERGESORT, witness, 3)
    assert rec.value == pytest.approx(float(avg), abs=1e-12)


def test_oracle_cost_formulas():
    assert oracle_cost(Algorithm.QUICKSORT, 3, 2, memoized=False) == 6 * 6
    assert oracle_cost(Algorithm.QUICKSORT, 3, 2, memoized=True) == 6 + 36
    with pytest.raises(ValueError):
        oracle_cost(Algorithm.QUICKSORT, 3, 4, memoized=False)


def test_exhaustive_budget_guard():
    tight = Budgets(exhaustive_lookups=1e3)
    with pytest.raises(BudgetExceededError) as err:
        sc_exhaustive(Algorithm.QUICKSORT, 6, 3, budgets=tight)
    assert "lookups" in str(err.value)


def test_hillclimb_budget_guard():
    tight = Budgets(hillclimb_group_size=10)
    with pytest.raises(BudgetExceededError):
        sc_hillclimb(Algorithm.QUICKSORT, 5, 3, budgets=tight)


def test_invalid_k_rejected():
    with pytest.raises(ValueError):
        sc_exhaustive(Algorithm.QUICKSORT, 5, 6)
    with pytest.raises(ValueError):
        sc_hillclimb(Algorithm.QUICKSORT, 5, 0)


def test_clear_caches_smoke():
    sc_exhaustive(Algorithm.QUICKSORT, 4, 2)
    clear_caches()
    rec = sc_exhaustive(Algorithm.QUICKSORT, 4, 2)
    assert rec.value == pytest.approx(float(Fraction(67, 12)), abs=1e-9)
