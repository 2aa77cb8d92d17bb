"""Ordered structures used by the dense ranker.

``RelativeRankIndex`` answers "how many stored keys are below this one".
``FreePositionSet`` answers "which unassigned position is closest to p".
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Callable, Hashable

from .errors import DuplicateKey, EmptySet, NotFree


class RelativeRankIndex:
    """Sorted collection of distinct keys.

    Lookups are binary searches; the backing store is a Python list, so an
    insert pays one C-level memmove (negligible below ~10**6 keys).

    Keys need not be comparable themselves: :meth:`locate` runs the binary
    search through a caller-supplied predicate, which is how rankers search
    by comparison outcomes alone.
    """

    def __init__(self):
        self._keys: list = []

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self):
        return iter(self._keys)

    def rank_below(self, key) -> int:
        return bisect_left(self._keys, key)

    def insert(self, key) -> int:
        i = bisect_left(self._keys, key)
        if i < len(self._keys) and self._keys[i] == key:
            raise DuplicateKey(key)
        self._keys.insert(i, key)
        return i

    def locate(self, is_less: Callable[[Hashable], bool]) -> int:
        """Count stored keys below a probe, where ``is_less(k)`` says probe < k."""
        keys = self._keys
        lo, hi = 0, len(keys)
        while lo < hi:
            mid = (lo + hi) >> 1
            if is_less(keys[mid]):
                hi = mid
            else:
                lo = mid + 1
        return lo

    def insert_at(self, index: int, key) -> None:
        """Insert at a position previously returned by :meth:`locate`."""
        self._keys.insert(index, key)


class FreePositionSet:
    """The unassigned subset of ``{1, ..., m}``.

    Taken positions are linked to their neighbours in two union-find forests
    (one pointing right, one pointing left) with path compression, the same
    trick as deletion in linear-probing tables.  Storage is proportional to
    the number of taken positions, so huge ``m`` costs nothing up front.
    """

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("m must be non-negative")
        self.m = m
        self._right: dict[int, int] = {}
        self._left: dict[int, int] = {}

    def __len__(self) -> int:
        return self.m - len(self._right)

    def __contains__(self, p: int) -> bool:
        return 1 <= p <= self.m and p not in self._right

    def _find(self, links: dict[int, int], x: int) -> int:
        root = x
        while root in links:
            root = links[root]
        while x != root:
            nxt = links[x]
            links[x] = root
            x = nxt
        return root

    def successor(self, p: int) -> int | None:
        """Smallest free position >= p, or None."""
        s = self._find(self._right, p)
        return s if s <= self.m else None

    def predecessor(self, p: int) -> int | None:
        """Largest free position <= p, or None."""
        s = self._find(self._left, p)
        return s if s >= 1 else None

    def nearest_free(self, target: int) -> int:
        """Free position closest to ``target``; equidistant ties go to the smaller one."""
        if len(self) == 0:
            raise EmptySet("no free positions left")
        if not 1 <= target <= self.m:
            raise ValueError(f"target {target} outside 1..{self.m}")
        hi = self._find(self._right, target)
        if hi == target:
            return target
        lo = self._find(self._left, target)
        if lo < 1:
            return hi
        if hi > self.m or target - lo <= hi - target:
            return lo
        return hi

    def take(self, p: int) -> None:
        if p not in self:
            raise NotFree(p)
        self._right[p] = p + 1
        self._left[p] = p - 1
