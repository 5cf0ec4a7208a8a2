import pytest

from scsort.dataset import Dataset, SCRecord, Source
from scsort.sorters import Algorithm

R = SCRecord


def test_record_validation():
    with pytest.raises(ValueError):
        R(Algorithm.QUICKSORT, 5, 6, 3.0, Source.MODULAR)
    with pytest.raises(ValueError):
        R(Algorithm.QUICKSORT, 5, 0, 3.0, Source.MODULAR)
    with pytest.raises(ValueError):
        R(Algorithm.QUICKSORT, 5, 2, 11.0, Source.MODULAR)  # over N(N-1)/2
    with pytest.raises(ValueError):
        R(Algorithm.QUICKSORT, 5, 2, -0.5, Source.MODULAR)


def test_dataset_add_get_filter():
    ds = Dataset([
        R(Algorithm.QUICKSORT, 10, 2, 39.7305, Source.MODULAR),
        R(Algorithm.QUICKSORT, 10, 3, 35.6077, Source.MODULAR),
        R(Algorithm.MERGESORT, 8, 2, 16.0, Source.EMPIRICAL_EXACT),
    ])
    assert len(ds) == 3
    assert ds.get(Algorithm.QUICKSORT, 10, 2).value == 39.7305
    assert ds.get(Algorithm.QUICKSORT, 10, 4) is None
    assert len(ds.filter(algorithm=Algorithm.QUICKSORT)) == 2
    assert len(ds.filter(n=10, k=3)) == 1
    assert ds.n_values() == [8, 10]
    with pytest.raises(ValueError):
        ds.add(R(Algorithm.QUICKSORT, 10, 2, 39.7305, Source.MODULAR))


def test_dataset_iteration_is_sorted():
    ds = Dataset([
        R(Algorithm.QUICKSORT, 10, 3, 35.6077, Source.MODULAR),
        R(Algorithm.QUICKSORT, 10, 2, 39.7305, Source.MODULAR),
        R(Algorithm.MERGESORT, 8, 2, 16.0, Source.EMPIRICAL_EXACT),
    ])
    keys = [(r.algorithm.value, r.n, r.k) for r in ds]
    assert keys == sorted(keys)


def test_csv_round_trip(tmp_path):
    ds = Dataset([
        R(Algorithm.QUICKSORT, 10, 2, 39.730483, Source.MODULAR),
        R(Algorithm.BUBBLESORT_OPT, 9, 4, 35.872685, Source.EMPIRICAL_HILLCLIMB),
    ])
    path = tmp_path / "data.csv"
    ds.write_csv(path)
    back = Dataset.read_csv(path)
    assert len(back) == 2
    for r in ds:
        # Values survive at printed (6 d.p.) precision.
        assert back.get(r.algorithm, r.n, r.k, r.source).value == pytest.approx(
            r.value, abs=5e-7)


def test_csv_header_check(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        Dataset.read_csv(path)


def test_merged_keeps_distinct_sources():
    a = Dataset([R(Algorithm.QUICKSORT, 10, 2, 39.7305, Source.MODULAR)])
    b = Dataset([R(Algorithm.QUICKSORT, 10, 2, 39.8, Source.PREDICTED)])
    merged = a.merged(b)
    assert len(merged) == 2
    assert merged.get(Algorithm.QUICKSORT, 10, 2, Source.PREDICTED).value == 39.8
