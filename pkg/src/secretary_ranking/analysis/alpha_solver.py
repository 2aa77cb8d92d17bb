"""Height-selection functions for the general ranker.

    f(a) = (a ln 2 - 1) / (1 - 2a ln(2e/a))
    g(a) = 1 / (1 - 2a ln(2e/a))

both defined for a > alpha0, the larger root of 1 - 2a ln(2e/a) = 0.
Logarithms in ``m >= 10 n log n`` are natural.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

from ..errors import DomainError, NoSolution, PreconditionViolation

_LN2 = math.log(2.0)
_TWO_E = 2.0 * math.e


def _pole(a: float) -> float:
    return 1.0 - 2.0 * a * math.log(_TWO_E / a)


def bisect(fn: Callable[[float], float], lo: float, hi: float, max_iter: int = 2000) -> float:
    """Root of ``fn`` on [lo, hi] given a sign change; runs to float resolution."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoSolution(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = fn(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def alpha0() -> float:
    # x ln(2e/x) peaks at x = 2, so the larger root sits in (2, 2e)
    return bisect(_pole, 2.0, _TWO_E)


def _check(a: float) -> float:
    den = _pole(a)
    if a <= alpha0() or den <= 0:
        raise DomainError(f"alpha={a} outside ({alpha0()}, inf)")
    return den


def f_alpha(a: float) -> float:
    return (a * _LN2 - 1.0) / _check(a)


def g_alpha(a: float) -> float:
    return 1.0 / _check(a)


def alpha_target(n: int, m: float) -> float:
    """Right-hand side m / (9 n ln n)."""
    return m / (9.0 * n * math.log(n))


def solve_alpha(n: int, m: float, rel_tol: float = 1e-6) -> float:
    """Solve m / (9 n ln n) = n ** f(alpha) for alpha > alpha0."""
    if n < 2:
        raise PreconditionViolation("need n >= 2")
    if m < 10 * n * math.log(n):
        raise PreconditionViolation(f"need m >= 10 n ln n = {10 * n * math.log(n):.1f}, got {m}")
    target = alpha_target(n, m)
    want = math.log(target) / math.log(n)
    lo = alpha0() + 1e-9
    if f_alpha(lo) < want:
        raise NoSolution(f"target f={want} above f(alpha0 + 1e-9)={f_alpha(lo)}")
    # f decays like ln2 / (2 ln(a / 2e)), so small targets need a wide bracket
    hi = 1e6
    while f_alpha(hi) > want:
        hi *= hi
        if math.isinf(hi):
            raise NoSolution(f"target f={want} below the reachable range")
    a = bisect(lambda x: f_alpha(x) - want, lo, hi)
    resid = abs(n ** f_alpha(a) - target) / target
    if resid > rel_tol:
        raise NoSolution(f"residual {resid:.3g} exceeds {rel_tol}")
    return a


def back_substitution_residual(n: int, m: float, a: float) -> float:
    target = alpha_target(n, m)
    return abs(n ** f_alpha(a) - target) / target
