"""Sortedness of a finished placement.

A placement map is given as a sequence ``positions`` where ``positions[i]``
is the position assigned to the element of true rank ``i + 1``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DomainError


def _as_array(positions: Sequence[int]) -> np.ndarray:
    a = np.asarray(positions, dtype=np.int64)
    if a.ndim != 1:
        raise ValueError("placement must be one-dimensional")
    return a


def count_inversions(positions: Sequence[int]) -> int:
    """Kendall tau distance to the sorted order, by bottom-up merge counting.

    Each level pairs sorted runs of width ``w``; for every element of a right
    run, the number of larger elements in its left run is read off a single
    vectorised ``searchsorted`` (runs are separated by per-pair offsets).
    """
    a = _as_array(positions)
    n = len(a)
    if n < 2:
        return 0
    size = 1 << (n - 1).bit_length()
    top = int(a.max()) + 1
    if size > n:
        a = np.concatenate([a, np.full(size - n, top, dtype=np.int64)])
    a = a - int(a.min())
    span = int(a.max()) + 1
    total = 0
    w = 1
    while w < size:
        runs = a.reshape(-1, 2, w)
        offs = (np.arange(runs.shape[0], dtype=np.int64) * span)[:, None]
        left = (runs[:, 0, :] + offs).ravel()
        right = runs[:, 1, :] + offs
        not_greater = np.searchsorted(left, right.ravel(), side="right").reshape(right.shape)
        not_greater -= (np.arange(runs.shape[0], dtype=np.int64) * w)[:, None]
        total += int(w * right.size - not_greater.sum())
        a = np.sort(a.reshape(-1, 2 * w), axis=1).ravel()
        w *= 2
    return total


def count_inversions_bruteforce(positions: Sequence[int]) -> int:
    """Literal pair count; the oracle for :func:`count_inversions`."""
    p = list(positions)
    n = len(p)
    count = 0
    for i in range(n):
        pi = p[i]
        for j in range(i + 1, n):
            if p[j] < pi:
                count += 1
    return count


def footrule(positions: Sequence[int], m: int | None = None) -> int:
    """Spearman footrule, defined only when positions are exactly 1..n."""
    a = _as_array(positions)
    n = len(a)
    if m is not None and m != n:
        raise DomainError(f"footrule needs m == n, got n={n}, m={m}")
    if n and (a.min() < 1 or a.max() > n):
        raise DomainError("footrule needs positions inside 1..n")
    return int(np.abs(a - np.arange(1, n + 1)).sum())


def is_order_isomorphic(positions: Sequence[int]) -> bool:
    a = _as_array(positions)
    return bool(np.all(a[1:] > a[:-1]))
