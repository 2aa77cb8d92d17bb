import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secretary_ranking.errors import DuplicateKey, EmptySet, NotFree
from secretary_ranking.order_structures import FreePositionSet, RelativeRankIndex


def scan_nearest(free: set, target: int) -> int:
    return min(free, key=lambda p: (abs(p - target), p))


def test_rank_below_examples():
    idx = RelativeRankIndex()
    assert idx.rank_below(17) == 0
    idx.insert(2)
    idx.insert(7)
    assert idx.rank_below(5) == 1
    full = RelativeRankIndex()
    for k in range(1, 101):
        if k != 40:
            full.insert(k)
    assert full.rank_below(40) == 39


def test_insert_then_query():
    idx = RelativeRankIndex()
    idx.insert(5)
    assert idx.rank_below(7) == 1
    with pytest.raises(DuplicateKey):
        idx.insert(5)


def test_insert_random_order_matches_naive_count():
    rnd = random.Random(3)
    n = 500
    keys = list(range(1, n + 1))
    rnd.shuffle(keys)
    idx = RelativeRankIndex()
    for k in keys[:300]:
        idx.insert(k)
    stored = keys[:300]
    for probe in rnd.sample(keys[300:], 100):
        assert idx.rank_below(probe) == sum(1 for s in stored if s < probe)


def test_locate_uses_predicate_only():
    idx = RelativeRankIndex()
    values = {10: 0.3, 11: 0.9, 12: 0.1}  # opaque handles -> hidden values
    for h in (10, 11, 12):
        pos = idx.locate(lambda other, h=h: values[h] < values[other])
        idx.insert_at(pos, h)
    assert list(idx) == [12, 10, 11]


def test_nearest_free_examples():
    free = FreePositionSet(9)
    assert free.nearest_free(5) == 5
    two = FreePositionSet(9)
    for p in range(1, 10):
        if p not in (3, 9):
            two.take(p)
    assert two.nearest_free(5) == 3
    tie = FreePositionSet(9)
    for p in range(1, 10):
        if p not in (4, 6):
            tie.take(p)
    assert tie.nearest_free(5) == 4


def test_take_examples():
    free = FreePositionSet(9)
    free.take(5)
    assert free.nearest_free(5) == 4
    with pytest.raises(NotFree):
        free.take(5)
    order = list(range(1, 10))
    random.Random(0).shuffle(order)
    for p in order:
        if p != 5:
            free.take(p)
    assert len(free) == 0
    with pytest.raises(EmptySet):
        free.nearest_free(1)


def test_interleaved_ops_match_scan_oracle():
    rnd = random.Random(17)
    m = 300
    free = FreePositionSet(m)
    naive = set(range(1, m + 1))
    for _ in range(1000):
        if not naive:
            break
        target = rnd.randint(1, m)
        want = scan_nearest(naive, target)
        assert free.nearest_free(target) == want
        if rnd.random() < 0.5:
            victim = rnd.choice(sorted(naive)) if rnd.random() < 0.5 else want
            free.take(victim)
            naive.remove(victim)
        assert len(free) == len(naive)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 80).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.tuples(st.booleans(), st.integers(1, m)), max_size=200))))
def test_nearest_free_property(case):
    m, ops = case
    free = FreePositionSet(m)
    naive = set(range(1, m + 1))
    for take, target in ops:
        if not naive:
            with pytest.raises(EmptySet):
                free.nearest_free(target)
            break
        got = free.nearest_free(target)
        assert got == scan_nearest(naive, target)
        if take:
            free.take(got)
            naive.remove(got)


def test_huge_position_range_is_lazy():
    free = FreePositionSet(10**15)
    free.take(10**15)
    assert free.nearest_free(10**15) == 10**15 - 1


@pytest.mark.slow
def test_million_ops_smoke():
    m = 10**6
    rnd = random.Random(1)
    free = FreePositionSet(m)
    targets = [rnd.randint(1, m) for _ in range(10**6)]
    start = time.perf_counter()
    for i, target in enumerate(targets):
        p = free.nearest_free(target)
        if i & 1:
            free.take(p)
    elapsed = time.perf_counter() - start
    assert len(free) == m - 5 * 10**5
    assert elapsed < 30, elapsed
