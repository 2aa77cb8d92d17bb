"""Height of random binary search trees.

Height counts edges: a single node has height 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..core import SeedSpec, derive_rng


def bst_height(order: Sequence[int]) -> int:
    """Height of the BST built by inserting the keys 1..n in ``order``.

    A new key hangs below whichever of its current predecessor and successor
    is deeper.  Neighbours at insertion time are found by deleting keys from
    a doubly linked list in reverse order, so the whole pass is O(n).
    """
    n = len(order)
    if n == 0:
        return -1
    prev = list(range(-1, n + 1))  # prev[k] for k in 0..n+1, sentinels 0 and n+1
    nxt = list(range(1, n + 3))
    pred = [0] * (n + 2)
    succ = [0] * (n + 2)
    for k in reversed(order):
        p, s = prev[k], nxt[k]
        pred[k], succ[k] = p, s
        nxt[p] = s
        prev[s] = p
    depth = [-1] * (n + 2)
    height = 0
    for k in order:
        dp = depth[pred[k]] if 1 <= pred[k] <= n else -1
        ds = depth[succ[k]] if 1 <= succ[k] <= n else -1
        d = (dp if dp > ds else ds) + 1
        depth[k] = d
        if d > height:
            height = d
    return height


def random_bst_height(n: int, seed: SeedSpec) -> int:
    if n < 1:
        raise ValueError("need n >= 1")
    order = list(range(1, n + 1))
    derive_rng(seed).shuffle(order)
    return bst_height(order)


@dataclass(frozen=True)
class TailEstimate:
    n: int
    trials: int
    k: float
    hits: int

    @property
    def p_hat(self) -> float:
        return self.hits / self.trials

    def sigma(self, p: float | None = None) -> float:
        """Binomial standard error of the estimate at probability ``p``."""
        p = self.p_hat if p is None else p
        return math.sqrt(p * (1 - p) / self.trials)

    def wilson_interval(self, z: float = 1.96) -> tuple[float, float]:
        ph, nt = self.p_hat, self.trials
        den = 1 + z * z / nt
        centre = (ph + z * z / (2 * nt)) / den
        half = z * math.sqrt(ph * (1 - ph) / nt + z * z / (4 * nt * nt)) / den
        return max(0.0, centre - half), min(1.0, centre + half)


def height_samples(n: int, trials: int, master_seed: int = 0) -> list[int]:
    return [random_bst_height(n, SeedSpec(master_seed, i)) for i in range(trials)]


def height_tail(n: int, trials: int, k: float, master_seed: int = 0,
                heights: Sequence[int] | None = None) -> TailEstimate:
    """Empirical Pr[H_n >= k ln n]; reuse ``heights`` to avoid resampling."""
    if heights is None:
        heights = height_samples(n, trials, master_seed)
    threshold = k * math.log(n)
    hits = sum(1 for h in heights if h >= threshold)
    return TailEstimate(n, len(heights), k, hits)


def devroye_tail_bound(n: int, k: float) -> float:
    """(1/n) (2e/k)^(k ln n), valid for k > 2."""
    return math.exp(-math.log(n) + k * math.log(n) * math.log(2 * math.e / k))


REED_ALPHA = 4.31107
DEVROYE_K = 6.3619


def height_cdf_table(n_max: int, h_max: int):
    """``table[h][n] = Pr[H_n <= h]`` for a random BST, from the split recurrence.

    Pr[H_n <= h] = (1/n) sum_i Pr[H_{i-1} <= h-1] Pr[H_{n-i} <= h-1], with the
    empty tree counted as height -1.  Convolutions are direct up to
    n_max = 5000; beyond that they go through FFT, whose round-off limits
    tail probabilities to roughly 1e-9 absolute accuracy.
    """
    import numpy as np
    from scipy.signal import fftconvolve

    conv_fn = np.convolve if n_max <= 5000 else fftconvolve

    sizes = np.arange(1, n_max + 1, dtype=np.float64)
    prev = np.zeros(n_max + 1)
    prev[0] = 1.0  # h = -1
    rows = []
    for _ in range(h_max + 1):
        conv = conv_fn(prev, prev)[: n_max]
        cur = np.empty(n_max + 1)
        cur[0] = 1.0
        cur[1:] = np.clip(conv / sizes, 0.0, 1.0)
        rows.append(cur)
        prev = cur
    return rows


def expected_height_exact(n: int, h_max: int | None = None) -> float:
    """E[H_n] summed from the exact height distribution."""
    if h_max is None:
        h_max = int(8 * math.log(n + 1)) + 20
    table = height_cdf_table(n, h_max)
    return float(sum(1.0 - row[n] for row in table))


def height_tail_exact(n: int, k: float) -> float:
    """Pr[H_n >= k ln n] from the exact distribution.

    Computed as 1 - cdf, so values below ~1e-12 are round-off.
    """
    threshold = math.ceil(k * math.log(n))
    if threshold <= 0:
        return 1.0
    table = height_cdf_table(n, threshold - 1)
    return float(max(0.0, 1.0 - table[threshold - 1][n]))
