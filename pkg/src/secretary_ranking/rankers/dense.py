"""Dense ranking and its variants.

Each arrival's relative rank r among earlier arrivals is scaled to the
position range and perturbed: x ~ U[r S/t, (r+1) S/t], erank = ceil(x)
clamped to [1, S], and the element takes the free position nearest erank.
S is n for the dense ranker and m for the scaled variant.
"""
from __future__ import annotations

import math
from typing import NamedTuple

from ..core import TrialRng
from ..errors import PreconditionViolation
from ..order_structures import FreePositionSet, RelativeRankIndex
from .base import Comparator, OnlineRanker


class DenseStep(NamedTuple):
    t: int
    r: int
    x: float
    erank: int
    pi: int


class DenseRanker(OnlineRanker):
    name = "dense"
    noise = True

    def __init__(self, n: int, m: int | None = None, rng: TrialRng | None = None):
        m = n if m is None else m
        if m != n:
            raise PreconditionViolation(f"dense ranking needs m == n, got n={n}, m={m}")
        if self.noise and rng is None:
            raise ValueError("dense ranking needs a random generator")
        super().__init__(n, m, rng)
        self.scale = n
        self.index = RelativeRankIndex()
        self.free = FreePositionSet(m)
        self.log: list[DenseStep] = []

    def _estimate(self, r: int, t: int) -> tuple[float, int]:
        x = (r + self.rng.uniform()) * self.scale / t
        e = math.ceil(x)
        return x, 1 if e < 1 else (self.scale if e > self.scale else e)

    def step(self, key: int, cmp: Comparator) -> int:
        """Place the next element; ``key`` is the arrival step ``cmp`` accepts for it later."""
        t = len(self.index) + 1
        r = self.index.locate(cmp)
        x, erank = self._estimate(r, t)
        pi = self.free.nearest_free(erank)
        self.free.take(pi)
        self.index.insert_at(r, key)
        self.log.append(DenseStep(t, r, x, erank, pi))
        return pi

    def place(self, t: int, cmp: Comparator) -> int:
        return self.step(t, cmp)

    def trace_rows(self) -> list[tuple]:
        return [tuple(s) for s in self.log]


class NoiselessRanker(DenseRanker):
    """Ablation: erank = ceil((r + 1/2) n / t), no randomness."""

    name = "noiseless"
    noise = False

    def _estimate(self, r: int, t: int) -> tuple[float, int]:
        x = (r + 0.5) * self.scale / t
        e = math.ceil(x)
        return x, 1 if e < 1 else (self.scale if e > self.scale else e)


class ScaledDenseRanker(DenseRanker):
    """Dense ranking stretched over m >= n positions (estimates scaled by m)."""

    name = "scaled-dense"

    def __init__(self, n: int, m: int, rng: TrialRng | None = None):
        if m < n:
            raise PreconditionViolation(f"need m >= n, got n={n}, m={m}")
        if rng is None:
            raise ValueError("scaled dense ranking needs a random generator")
        OnlineRanker.__init__(self, n, m, rng)
        self.scale = m
        self.index = RelativeRankIndex()
        self.free = FreePositionSet(m)
        self.log = []


class RandomRanker(OnlineRanker):
    """Baseline: a uniformly random free position, ignoring comparisons."""

    name = "random"

    def __init__(self, n: int, m: int | None = None, rng: TrialRng | None = None):
        m = n if m is None else m
        if rng is None:
            raise ValueError("random placement needs a random generator")
        super().__init__(n, m, rng)
        self._free = list(range(1, m + 1)) if m <= 4 * n + 64 else None
        self._taken: set[int] = set()

    def place(self, t: int, cmp: Comparator) -> int:
        if self._free is not None:
            i = self.rng.randbelow(len(self._free))
            p = self._free[i]
            self._free[i] = self._free[-1]
            self._free.pop()
            return p
        # sparse case: rejection over 1..m keeps memory O(n)
        while True:
            p = self.rng.randbelow(self.m) + 1
            if p not in self._taken:
                self._taken.add(p)
                return p
