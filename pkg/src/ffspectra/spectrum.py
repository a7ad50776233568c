"""Value-to-count multisets shared by the differential, boomerang, Walsh and weight reports."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

import numpy as np


class Spectrum(Mapping[int, int]):
    """An immutable ``value -> count`` map with zero counts dropped and keys kept sorted."""

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> None:
        items = counts.items() if isinstance(counts, Mapping) else counts
        acc: Counter[int] = Counter()
        for k, v in items:
            acc[int(k)] += int(v)
        self._d = {k: acc[k] for k in sorted(acc) if acc[k]}

    @classmethod
    def from_values(cls, values) -> Spectrum:
        """Histogram of an iterable or integer array of values."""
        arr = np.asarray(values).ravel()
        if arr.size == 0:
            return cls()
        uniq, cnt = np.unique(arr, return_counts=True)
        return cls(zip(uniq.tolist(), cnt.tolist()))

    def __getitem__(self, k: int) -> int:
        return self._d[k]

    def get(self, k, default=0):
        return self._d.get(k, default)

    def __iter__(self):
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            return self._d == {int(k): int(v) for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._d.items()))

    def __add__(self, other: Mapping[int, int]) -> Spectrum:
        return Spectrum(list(self._d.items()) + list(other.items()))

    def __repr__(self) -> str:
        return f"Spectrum({self._d})"

    @property
    def total(self) -> int:
        return sum(self._d.values())

    @property
    def weighted_total(self) -> int:
        return sum(k * v for k, v in self._d.items())

    def moment(self, k: int, shift: int = 0) -> int:
        return sum((val - shift) ** k * cnt for val, cnt in self._d.items())

    @property
    def max_value(self) -> int:
        return max(self._d)

    def as_dict(self) -> dict[int, int]:
        return dict(self._d)

    def pairs(self) -> list[tuple[int, int]]:
        """``(value, count)`` pairs in ascending value order."""
        return list(self._d.items())

    def check_mass(self, size: int) -> bool:
        """Both sums of a power map's differential spectrum equal the field size."""
        return self.total == size and self.weighted_total == size
