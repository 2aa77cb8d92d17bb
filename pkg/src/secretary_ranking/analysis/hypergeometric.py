"""Hypergeometric probabilities and the anti-concentration scan.

``pmf(n, r, t, k)`` is the chance that exactly ``k`` of ``t`` balls drawn
without replacement from ``n`` balls (``r`` of them red) are red.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..errors import DomainError


@dataclass(frozen=True)
class HypergeomParams:
    n: int
    r: int
    t: int
    k: int

    def __post_init__(self):
        if not (0 <= self.k <= self.t <= self.n and 0 <= self.r <= self.n):
            raise DomainError(f"invalid hypergeometric parameters {self}")


def _log_comb(a: int, b: int) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def hypergeom_pmf(n: int, r: int, t: int, k: int) -> float:
    HypergeomParams(n, r, t, k)
    if k > r or t - k > n - r:
        return 0.0
    return math.exp(_log_comb(r, k) + _log_comb(n - r, t - k) - _log_comb(n, t))


def hypergeom_pmf_exact(n: int, r: int, t: int, k: int) -> Fraction:
    """Rational value from integer binomials, for cross-checking."""
    HypergeomParams(n, r, t, k)
    return Fraction(math.comb(r, k) * math.comb(n - r, t - k), math.comb(n, t))


def support(n: int, r: int, t: int) -> range:
    return range(max(0, t - (n - r)), min(r, t) + 1)


def max_pmf_over_k(n: int, r: int, t: int) -> tuple[int, float]:
    """Mode of the pmf by direct scan of the support (smallest k on ties)."""
    if not (0 <= r <= n and 0 <= t <= n):
        raise DomainError(f"invalid parameters n={n}, r={r}, t={t}")
    best_k, best_log = 0, -math.inf
    base = -_log_comb(n, t)
    for k in support(n, r, t):
        lp = _log_comb(r, k) + _log_comb(n - r, t - k) + base
        if lp > best_log:
            best_k, best_log = k, lp
    return best_k, math.exp(best_log)


@dataclass(frozen=True)
class ScanRow:
    n: int
    r: int
    t: int
    k_star: int
    p_star: float

    @property
    def sqrt_n_p_star(self) -> float:
        return math.sqrt(self.n) * self.p_star


SCAN_COLUMNS = ("n", "r", "t", "k_star", "p_star", "sqrt_n_p_star")


def anti_concentration_scan(sizes: Iterable[int], rho_r: float, rho_t: float) -> list[ScanRow]:
    if not (0 < rho_r < 1 and 0 < rho_t < 1):
        raise DomainError("fractions must lie strictly between 0 and 1")
    rows = []
    for n in sizes:
        r = math.floor(rho_r * n)
        t = math.floor(rho_t * n)
        if t > min(r, n - r):
            raise DomainError(f"n={n}: draws t={t} exceed min(r, n-r)={min(r, n - r)}")
        k_star, p_star = max_pmf_over_k(n, r, t)
        rows.append(ScanRow(n, r, t, k_star, p_star))
    return rows
