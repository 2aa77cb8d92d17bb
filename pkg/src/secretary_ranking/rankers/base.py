"""Common ranker interface and the online driver."""
from __future__ import annotations

from typing import Callable, Sequence

from ..core import TrialRng

# cmp(s) answers: is the current element smaller than the one that arrived at step s?
Comparator = Callable[[int], bool]


class OnlineRanker:
    """Assigns each arrival an irrevocable, distinct position in 1..m.

    ``place(t, cmp)`` is called once per arrival with t = 1, 2, ..., n.  The
    only information about the element is ``cmp``, which may be queried for
    earlier arrival steps ``1 <= s < t``.
    """

    name = "abstract"

    def __init__(self, n: int, m: int, rng: TrialRng | None = None):
        self.n = n
        self.m = m
        self.rng = rng

    def place(self, t: int, cmp: Comparator) -> int:
        raise NotImplementedError

    def trace_rows(self) -> list[tuple]:
        return []


class OnlineViolation(AssertionError):
    pass


class RecordingOracle:
    """Comparison oracle that logs every query and rejects look-ahead."""

    def __init__(self, arrivals: Sequence[int]):
        self.arrivals = arrivals
        self.current = 0
        self.queries: list[tuple[int, int]] = []

    def __call__(self, s: int) -> bool:
        if not 1 <= s < self.current:
            raise OnlineViolation(f"step {self.current} queried step {s}")
        self.queries.append((self.current, s))
        return self.arrivals[self.current - 1] < self.arrivals[s - 1]


def run_online(ranker: OnlineRanker, arrivals: Sequence[int],
               oracle: RecordingOracle | None = None) -> list[int]:
    """Feed ``arrivals`` (true ranks) to ``ranker``; return positions by true rank."""
    n = len(arrivals)
    by_rank = [0] * n
    if oracle is None:
        for t in range(1, n + 1):
            cur = arrivals[t - 1]
            p = ranker.place(t, lambda s, cur=cur: cur < arrivals[s - 1])
            by_rank[cur - 1] = p
    else:
        for t in range(1, n + 1):
            oracle.current = t
            by_rank[arrivals[t - 1] - 1] = ranker.place(t, oracle)
    return by_rank
