"""Lexicographic permutation enumeration and Lehmer-code ranking.

Permutations of {1..N} are indexed by their lexicographic rank, which
coincides with the Lehmer code read as a factorial-number-system integer.
Dense rank indexing is what lets runtime tables be stored as flat arrays.
"""

from __future__ import annotations

import itertools
from math import factorial

import numpy as np

__all__ = [
    "all_permutations",
    "lehmer_rank",
    "lehmer_unrank",
    "lex_keys",
    "rank_rows",
]


def lehmer_rank(p) -> int:
    """Lexicographic rank of a permutation of {1..N} (0-based)."""
    n = len(p)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        rank += smaller * factorial(n - 1 - i)
    return rank


def lehmer_unrank(rank: int, n: int) -> tuple[int, ...]:
    """Inverse of lehmer_rank: the rank-th permutation of {1..N} in lex order."""
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} out of range for N={n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n):
        f = factorial(n - 1 - i)
        idx, rank = divmod(rank, f)
        out.append(pool.pop(idx))
    return tuple(out)


def all_permutations(n: int) -> np.ndarray:
    """All permutations of {1..N} as an (N!, N) int8 matrix in lex order.

    Row r is the permutation with Lehmer rank r.
    """
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8)


def _radix(n: int) -> np.ndarray:
    # Mixed-radix weights, most significant position first; strictly monotone
    # in lex order, so the key vector of all_permutations(n) is sorted.
    return (n + 1) ** np.arange(n - 1, -1, -1, dtype=np.int64)


def lex_keys(rows: np.ndarray) -> np.ndarray:
    """Integer keys, one per row, monotone in lexicographic row order."""
    n = rows.shape[1]
    return rows.astype(np.int64) @ _radix(n)


def rank_rows(rows: np.ndarray, sorted_keys: np.ndarray) -> np.ndarray:
    """Ranks of permutation rows given the precomputed key table.

    sorted_keys must be lex_keys(all_permutations(n)), which is sorted.
    """
    return np.searchsorted(sorted_keys, lex_keys(rows))
