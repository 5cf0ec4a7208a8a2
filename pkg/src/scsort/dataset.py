"""SC records and their CSV persistence."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .sorters import Algorithm

__all__ = ["Source", "SCRecord", "Dataset"]


class Source(enum.Enum):
    EMPIRICAL_EXACT = "empirical_exact"
    EMPIRICAL_HILLCLIMB = "empirical_hillclimb"
    MODULAR = "modular"
    PREDICTED = "predicted"


@dataclass(frozen=True)
class SCRecord:
    algorithm: Algorithm
    n: int
    k: int
    value: float
    source: Source

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"K={self.k} out of range 1..{self.n}")
        if not 0 <= self.value <= self.n * (self.n - 1) / 2:
            raise ValueError(
                f"SC value {self.value} outside [0, N(N-1)/2] for N={self.n}"
            )

    @property
    def key(self) -> tuple:
        return (self.algorithm, self.n, self.k, self.source)


class Dataset:
    """Collection of SCRecords, unique per (algorithm, N, K, source)."""

    def __init__(self, records: Iterable[SCRecord] = ()):
        self._records: dict[tuple, SCRecord] = {}
        for r in records:
            self.add(r)

    def add(self, record: SCRecord) -> None:
        if record.key in self._records:
            raise ValueError(f"duplicate record key {record.key}")
        self._records[record.key] = record

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[SCRecord]:
        return iter(sorted(self._records.values(),
                           key=lambda r: (r.algorithm.value, r.n, r.k, r.source.value)))

    def __contains__(self, key: tuple) -> bool:
        return key in self._records

    def get(self, algorithm: Algorithm, n: int, k: int, source: Source | None = None):
        """The record at (algorithm, n, k); source=None matches any source."""
        if source is not None:
            return self._records.get((algorithm, n, k, source))
        for r in self._records.values():
            if (r.algorithm, r.n, r.k) == (algorithm, n, k):
                return r
        return None

    def filter(self, algorithm: Algorithm | None = None, n: int | None = None,
               k: int | None = None, source: Source | None = None) -> "Dataset":
        out = Dataset()
        for r in self._records.values():
            if algorithm is not None and r.algorithm is not algorithm:
                continue
            if n is not None and r.n != n:
                continue
            if k is not None and r.k != k:
                continue
            if source is not None and r.source is not source:
                continue
            out.add(r)
        return out

    def n_values(self) -> list[int]:
        return sorted({r.n for r in self._records.values()})

    def merged(self, other: "Dataset") -> "Dataset":
        return Dataset(list(self) + list(other))

    HEADER = ["algorithm", "N", "K", "sc", "source"]

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(self.HEADER)
            for r in self:
                w.writerow([r.algorithm.value, r.n, r.k, f"{r.value:.6f}", r.source.value])

    @classmethod
    def read_csv(cls, path: str | Path) -> "Dataset":
        out = cls()
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != cls.HEADER:
                raise ValueError(f"unexpected CSV header in {path}: {reader.fieldnames}")
            for row in reader:
                out.add(SCRecord(Algorithm(row["algorithm"]), int(row["N"]),
                                 int(row["K"]), float(row["sc"]), Source(row["source"])))
        return out
