"""Empirical-exponent fits and the quadratic-ratio sum check."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..errors import DegenerateInput


@dataclass(frozen=True)
class SlopeFit:
    points: list[tuple[float, float]] = field(repr=False)
    slope: float
    intercept: float
    residual: float

    def predict(self, n: float) -> float:
        return math.exp(self.intercept + self.slope * math.log(n))


def fit_loglog_slope(points: Iterable[tuple[float, float]]) -> SlopeFit:
    """Least-squares line through (ln n, ln cost); residual is the sum of squares."""
    pts = [(float(n), float(c)) for n, c in points]
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 points")
    if any(n <= 0 or c <= 0 or not math.isfinite(c) for n, c in pts):
        raise DegenerateInput("sizes and costs must be positive and finite")
    x = np.log([n for n, _ in pts])
    y = np.log([c for _, c in pts])
    if np.ptp(x) == 0:
        raise DegenerateInput("all sizes identical")
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sum((y - (slope * x + intercept)) ** 2))
    return SlopeFit([(float(a), float(b)) for a, b in zip(x, y)], float(slope), float(intercept), resid)


def quadratic_ratio_sum(n: int) -> float:
    """sum_{t=1}^{floor(n - sqrt n)} (t / (n - t))^2."""
    if n < 4:
        raise ValueError("need n >= 4")
    upper = math.floor(n - math.sqrt(n))
    t = np.arange(1, upper + 1, dtype=np.float64)
    return float(np.sum((t / (n - t)) ** 2))


def appendix_b_sum_check(n: int) -> float:
    """The quadratic-ratio sum divided by n^1.5."""
    return quadratic_ratio_sum(n) / n ** 1.5
