"""Static range-maximum queries with a sparse table."""
from __future__ import annotations

import numpy as np


class SparseTableMax:
    """O(n log n) build, O(1) argmax over any closed index range."""

    def __init__(self, values):
        a = np.asarray(values, dtype=float)
        self.values = a
        n = len(a)
        self._levels = [np.arange(n)]
        k = 1
        while 2 * k <= n:
            prev = self._levels[-1]
            left, right = prev[: n - 2 * k + 1], prev[k: n - k + 1]
            self._levels.append(np.where(a[right] > a[left], right, left))
            k *= 2

    def __len__(self) -> int:
        return len(self.values)

    def argmax(self, lo: int, hi: int) -> int | None:
        """Index of the maximum in values[lo..hi] (leftmost on ties), or None
        for an empty range."""
        if hi < lo:
            return None
        j = (hi - lo + 1).bit_length() - 1
        level = self._levels[j]
        i1, i2 = int(level[lo]), int(level[hi - (1 << j) + 1])
        return i2 if self.values[i2] > self.values[i1] else i1

    def max(self, lo: int, hi: int) -> float:
        i = self.argmax(lo, hi)
        return -np.inf if i is None else float(self.values[i])
