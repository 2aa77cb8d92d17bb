import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secretary_ranking.errors import DomainError
from secretary_ranking.metrics import (
    count_inversions,
    count_inversions_bruteforce,
    footrule,
    is_order_isomorphic,
)


def test_identity_and_reversal():
    assert count_inversions(list(range(1, 9))) == 0
    assert count_inversions([5, 4, 3, 2, 1]) == 10
    assert count_inversions_bruteforce([2, 1]) == 1
    assert count_inversions_bruteforce([1, 2, 3]) == 0
    assert count_inversions([]) == 0
    assert count_inversions([7]) == 0


def test_exhaustive_n_up_to_6():
    for n in range(1, 7):
        for perm in permutations(range(1, n + 1)):
            assert count_inversions(perm) == count_inversions_bruteforce(perm)


def test_random_maps_into_larger_range():
    rnd = random.Random(8)
    for _ in range(500):
        n = rnd.randint(0, 64)
        m = rnd.randint(n, 4 * n + 3)
        p = rnd.sample(range(1, m + 1), n)
        assert count_inversions(p) == count_inversions_bruteforce(p)


def test_no_32bit_overflow():
    n = 100_000
    assert count_inversions(list(range(n, 0, -1))) == n * (n - 1) // 2


def test_footrule_examples():
    assert footrule([1, 2, 3, 4]) == 0
    assert footrule([4, 3, 2, 1]) == 8
    with pytest.raises(DomainError):
        footrule([1, 3], m=3)
    with pytest.raises(DomainError):
        footrule([1, 5])


@settings(max_examples=400, deadline=None)
@given(st.integers(2, 128).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_diaconis_graham(perm):
    k = count_inversions(perm)
    f = footrule(perm)
    assert k <= f <= 2 * k


def test_diaconis_graham_bulk():
    rnd = random.Random(0)
    for _ in range(10_000):
        n = rnd.randint(2, 128)
        perm = rnd.sample(range(1, n + 1), n)
        k, f = count_inversions(perm), footrule(perm)
        assert k <= f <= 2 * k


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 10**6), unique=True, max_size=60))
def test_range_and_zero_iff_sorted(p):
    k = count_inversions(p)
    n = len(p)
    assert 0 <= k <= n * (n - 1) // 2
    assert (k == 0) == is_order_isomorphic(p)
