"""Partial-permutation perturbed groups and exact averaging over them.

A perturbation of degree K picks K of the N positions and rearranges the
selected values uniformly; the perturbed group of an input is the multiset
of all C(N,K)*K! outcomes.  Every group member equals the input composed
with a position permutation supported inside the chosen K-subset, so group
averaging reduces to table lookups through precomputed index templates.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from pathlib import Path

import numpy as np

from .budgets import DEFAULT_BUDGETS, BudgetExceededError, Budgets
from .permutations import all_permutations, lex_keys, rank_rows
from .sorters import Algorithm, runtime_table, validate_permutation

__all__ = [
    "group_size",
    "perturbed_group",
    "RuntimeMemo",
    "avg_perturbed_runtime",
    "avg_perturbed_runtime_exact",
]


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"K={k} out of range 1..{n}")


def group_size(n: int, k: int) -> int:
    """Multiset size of a perturbed group: N!/(N-K)!."""
    _check_k(n, k)
    return factorial(n) // factorial(n - k)


def perturbed_group(p, k: int):
    """Yield the perturbed-group multiset of p, degree k.

    For each K-subset of positions, all K! rearrangements of the selected
    values are produced (other positions fixed), duplicates included.
    """
    validate_permutation(p)
    n = len(p)
    _check_k(n, k)
    p = tuple(p)
    for subset in itertools.combinations(range(n), k):
        values = [p[i] for i in subset]
        for arrangement in itertools.permutations(values):
            member = list(p)
            for pos, v in zip(subset, arrangement):
                member[pos] = v
            yield tuple(member)


@lru_cache(maxsize=32)
def _gather_template(n: int, k: int) -> np.ndarray:
    """(M, N) position-index template with M = N!/(N-K)! rows.

    Row g maps an input p to the group member p[g]; the template depends
    only on (N, K).
    """
    m = group_size(n, k)
    out = np.empty((m, n), dtype=np.int8)
    identity = np.arange(n, dtype=np.int8)
    arrangements = np.array(list(itertools.permutations(range(k))), dtype=np.int8)
    row = 0
    for subset in itertools.combinations(range(n), k):
        subset = np.array(subset, dtype=np.int8)
        block = np.broadcast_to(identity, (factorial(k), n)).copy()
        block[:, subset] = subset[arrangements]
        out[row : row + factorial(k)] = block
        row += factorial(k)
    return out


@dataclass(frozen=True)
class RuntimeMemo:
    """Dense comparison-count table for one (algorithm, N), rank-indexed."""

    algorithm: Algorithm
    n: int
    counts: np.ndarray = field(repr=False)
    _keys: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, alg: Algorithm, n: int, budgets: Budgets = DEFAULT_BUDGETS,
              cache_dir: str | Path | None = None) -> "RuntimeMemo":
        """Build (or load from cache_dir) the N!-entry table.

        cache_dir defaults to $SCSORT_CACHE_DIR when set; regeneration is
        deterministic, so a missing cache is only a speed matter.
        """
        if cache_dir is None:
            cache_dir = os.environ.get("SCSORT_CACHE_DIR") or None
        counts = None
        path = None
        if cache_dir is not None:
            path = Path(cache_dir) / f"runtimes_{alg.value}_{n}.npy"
            if path.exists():
                counts = np.load(path)
                if counts.shape != (factorial(n),):
                    raise ValueError(f"corrupt runtime cache {path}")
        if counts is None:
            counts = runtime_table(alg, n, budgets.enumeration_max_n)
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                np.save(path, counts)
        keys = lex_keys(all_permutations(n))
        return cls(alg, n, np.asarray(counts, dtype=np.int64), keys)

    def lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        return self.counts[rank_rows(rows, self._keys)]

    def group_total(self, p, k: int) -> int:
        """Exact integer sum of counts over the perturbed group of p."""
        rows = np.asarray(p, dtype=np.int8)[_gather_template(self.n, k)]
        return int(self.lookup_rows(rows).sum())


def avg_perturbed_runtime_exact(
    alg: Algorithm,
    p,
    k: int,
    memo: RuntimeMemo | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Fraction:
    """Exact mean comparison count over the perturbed group of p."""
    validate_permutation(p)
    n = len(p)
    _check_k(n, k)
    gs = group_size(n, k)
    if gs > budgets.hillclimb_group_size:
        raise BudgetExceededError(
            f"group size {gs} exceeds per-evaluation budget "
            f"{budgets.hillclimb_group_size:g}"
        )
    if memo is not None:
        if memo.algorithm is not alg or memo.n != n:
            raise ValueError("memo does not match (algorithm, N)")
        total = memo.group_total(p, k)
    else:
        from .sorters import count_comparisons

        total = sum(count_comparisons(alg, member) for member in perturbed_group(p, k))
    return Fraction(total, gs)


def avg_perturbed_runtime(alg: Algorithm, p, k: int, memo: RuntimeMemo | None = None,
                          budgets: Budgets = DEFAULT_BUDGETS) -> float:
    """Float view of avg_perturbed_runtime_exact (single final division)."""
    return float(avg_perturbed_runtime_exact(alg, p, k, memo, budgets))
