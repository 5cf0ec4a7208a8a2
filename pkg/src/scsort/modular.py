"""Modular smoothed-analysis recurrences for Quicksort and M3Quicksort.

Both recurrences express the SC at perturbation degree K through the SC of
all smaller list lengths.  Subproblems shorter than K are evaluated at full
perturbation (K clamped to the sublist length), which collapses them to
their average case; this is the convention that reproduces the published
Quicksort table values and, for M3Quicksort, matches the enumerated
average case exactly at K=N.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .dataset import Dataset, SCRecord, Source
from .sorters import Algorithm, average_runtime_exact

__all__ = [
    "QUICKSORT_N_CAP",
    "M3_N_CAP",
    "quicksort_beta",
    "modular_sc_quicksort",
    "quicksort_sc_table",
    "m3_beta",
    "modular_sc_m3quicksort",
    "modular_table",
]

# Feasibility caps reflecting where each recurrence stays tractable.
QUICKSORT_N_CAP = 3000
M3_N_CAP = 130


def quicksort_beta(n: int, k: int) -> tuple[float, float]:
    """Coefficients (beta_N, beta_other) of the Quicksort recurrence at (n, k)."""
    if not 1 <= k <= n:
        raise ValueError(f"K={k} out of range 1..{n}")
    if n < 2:
        raise ValueError("coefficients defined for N >= 2")
    return (n - k + 1) / n, (k - 1) / (n * (n - 1))


@lru_cache(maxsize=None)
def _quicksort_column(k: int, n_max: int) -> np.ndarray:
    """f(0..n_max, k) for Quicksort via the prefix-sum DP (O(n_max))."""
    f = np.zeros(n_max + 1)
    running = 0.0  # sum of f(0..n-1)
    for n in range(2, n_max + 1):
        ke = min(k, n)
        b_n, b_other = quicksort_beta(n, ke)
        # First sum pairs beta_n with f(0)=0; second pairs it with f(n-1).
        f[n] = (n - 1) + b_other * ((running - f[0]) + (running - f[n - 1])) + b_n * f[n - 1]
        running += f[n]
    return f


def modular_sc_quicksort(n: int, k: int, n_cap: int = QUICKSORT_N_CAP) -> float:
    """SC of Quicksort from the modular recurrence (base f(0)=f(1)=0)."""
    if not 1 <= k <= n:
        raise ValueError(f"K={k} out of range 1..{n}")
    if n > n_cap:
        raise ValueError(f"N={n} over the Quicksort recurrence cap {n_cap}")
    return float(_quicksort_column(k, max(n, 2))[n])


def quicksort_sc_table(n_max: int, n_cap: int = QUICKSORT_N_CAP) -> np.ndarray:
    """Full (n_max+1, n_max+1) Quicksort SC table; entry [n, k] is f(n, k).

    Vectorized over K; entries with k > n or k < 1 are NaN.
    """
    if n_max > n_cap:
        raise ValueError(f"N={n_max} over the Quicksort recurrence cap {n_cap}")
    ks = np.arange(n_max + 1, dtype=float)
    f_prev = np.zeros(n_max + 1)  # f(n-1, .)
    running = np.zeros(n_max + 1)  # sum of f(0..n-1, .)
    table = np.full((n_max + 1, n_max + 1), np.nan)
    table[:, 1:] = 0.0
    for n in range(2, n_max + 1):
        ke = np.minimum(ks, n)
        b_n = (n - ke + 1) / n
        b_other = (ke - 1) / (n * (n - 1))
        f_n = (n - 1) + b_other * (2 * running - f_prev) + b_n * f_prev
        running += f_n
        f_prev = f_n
        table[n, 1:] = f_n[1:]
    for n in range(n_max + 1):
        table[n, n + 1:] = np.nan
    return table


def _comb0(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


@lru_cache(maxsize=None)
def m3_beta(n: int, k: int, j: int) -> Fraction:
    """Exact coefficient beta_j^{N-1} of the M3Quicksort recurrence.

    Valid for 2 <= j <= N-1; out-of-domain binomials evaluate to zero.
    """
    if not (4 <= k <= n and 2 <= j <= n - 1):
        raise ValueError(f"beta undefined for N={n}, K={k}, j={j}")
    if j == n - 1:
        num = (
            factorial(k) * _comb0(n - 3, k)
            + factorial(k - 1) * _comb0(n - 3, k - 1) * (2 + k)
            + 2 * factorial(k - 2) * _comb0(n - 3, k - 2) * (2 * k - 1)
            + 6 * factorial(k - 2) * _comb0(n - 3, k - 3)
        )
        return Fraction(num * factorial(n - k), factorial(n))
    inner = (
        2 * Fraction(_comb0(n - 4, k - 2))
        + Fraction(2 * (k + 1), k - 1) * _comb0(n - 4, k - 3)
        + Fraction(3 * (n - j), k - 1) * _comb0(n - 4, k - 4)
    )
    return Fraction(2 * (j - 1), k * (n - 2) * comb(n, k)) * inner


@lru_cache(maxsize=None)
def _m3_base3() -> float:
    # Enumerated average case at n=3 under the instrumented convention
    # (fixed three-comparison median sample): every input costs 3.
    return float(average_runtime_exact(Algorithm.M3QUICKSORT, 3))


@lru_cache(maxsize=None)
def _m3_column(k: int, n_max: int, base2: float, base3: float) -> tuple:
    f = [0.0] * (n_max + 1)
    if n_max >= 2:
        f[2] = base2
    if n_max >= 3:
        f[3] = base3
    for n in range(4, n_max + 1):
        ke = min(k, n)
        total = float(n)  # (n-1) + 1
        for j in range(2, n):
            b = float(m3_beta(n, ke, j)) + float(m3_beta(n, ke, n + 1 - j))
            total += b * f[j - 1]
        f[n] = total
    return tuple(f)


def modular_sc_m3quicksort(n: int, k: int, n_cap: int = M3_N_CAP,
                           base_values: tuple[float, float] | None = None) -> float:
    """SC of M3Quicksort from its modular recurrence.

    Requires K >= 4 (the coefficient formulas vanish below that).  Base
    values (f(2), f(3)) default to the instrumented counts (1, 3) but are
    overridable since the recurrence itself does not fix them.
    """
    if k < 4:
        raise ValueError(f"M3Quicksort recurrence requires K >= 4, got K={k}")
    if k > n:
        raise ValueError(f"K={k} out of range 4..{n}")
    if n > n_cap:
        raise ValueError(f"N={n} over the M3Quicksort recurrence cap {n_cap}")
    base2, base3 = base_values if base_values is not None else (1.0, _m3_base3())
    return _m3_column(k, max(n, 2), base2, base3)[n]


def modular_table(alg: Algorithm, n_values, k_values) -> tuple[Dataset, list[str]]:
    """Batch-evaluate a recurrence over a grid; skips invalid cells.

    k_values may contain the string "N" meaning K=N per row.  Returns the
    dataset and a list of warnings for skipped (N, K) cells.
    """
    if alg not in (Algorithm.QUICKSORT, Algorithm.M3QUICKSORT):
        raise ValueError(f"no modular recurrence for {alg.value}")
    n_values = list(n_values)
    k_values = list(k_values)
    if not n_values or not k_values:
        raise ValueError("empty N or K range")
    out = Dataset()
    warnings: list[str] = []
    for n in n_values:
        for k_spec in k_values:
            k = n if k_spec == "N" else int(k_spec)
            try:
                if alg is Algorithm.QUICKSORT:
                    value = modular_sc_quicksort(n, k)
                else:
                    value = modular_sc_m3quicksort(n, k)
            except ValueError as exc:
                warnings.append(f"skipped (N={n}, K={k}): {exc}")
                continue
            out.add(SCRecord(alg, n, k, value, Source.MODULAR))
    return out, warnings
