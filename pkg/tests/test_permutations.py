import itertools
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scsort.permutations import (all_permutations, lehmer_rank, lehmer_unrank,
                                 lex_keys, rank_rows)


@pytest.mark.parametrize("n", range(1, 7))
def test_rank_matches_lex_position(n):
    for i, p in enumerate(itertools.permutations(range(1, n + 1))):
        assert lehmer_rank(p) == i


@pytest.mark.parametrize("n", range(1, 7))
def test_unrank_round_trip(n):
    for r in range(factorial(n)):
        assert lehmer_rank(lehmer_unrank(r, n)) == r


def test_unrank_rejects_out_of_range():
    with pytest.raises(ValueError):
        lehmer_unrank(6, 3)
    with pytest.raises(ValueError):
        lehmer_unrank(-1, 3)


@pytest.mark.parametrize("n", range(1, 8))
def test_all_permutations_shape_and_order(n):
    perms = all_permutations(n)
    assert perms.shape == (factorial(n), n)
    assert perms.dtype == np.int8
    # Row r must be the rank-r permutation.
    assert tuple(perms[0]) == tuple(range(1, n + 1))
    assert tuple(perms[-1]) == tuple(range(n, 0, -1))
    keys = lex_keys(perms)
    assert np.all(np.diff(keys) > 0), "keys must be strictly increasing in lex order"


@pytest.mark.parametrize("n", range(2, 7))
def test_rank_rows_agrees_with_lehmer_rank(n):
    perms = all_permutations(n)
    keys = lex_keys(perms)
    rng = np.random.default_rng(0)
    rows = perms[rng.integers(0, len(perms), size=50)]
    got = rank_rows(rows, keys)
    want = [lehmer_rank(tuple(row)) for row in rows]
    assert list(got) == want


@given(st.permutations(list(range(1, 9))))
def test_rank_unrank_property(p):
    assert lehmer_unrank(lehmer_rank(p), len(p)) == tuple(p)
