"""Running trials and aggregating them into reports."""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..analysis.fitting import SlopeFit, fit_loglog_slope
from ..core import ArrivalMode, SeedSpec, derive_rng, generate_instance
from ..errors import DegenerateInput
from ..metrics import count_inversions, footrule
from ..rankers import DenseRanker, make_ranker, run_online
from ..rankers.tree import GeneralRanker
from .config import ExperimentConfig

THREADS_ENV = "RANK_ARRIVAL_THREADS"


def trial_seed(master_seed: int, n: int, trial: int) -> SeedSpec:
    """Per-trial seed: trial_index packs (n, trial) so sizes never share streams."""
    return SeedSpec(master_seed, (n << 32) | trial)


@dataclass
class TrialResult:
    algo: str
    n: int
    m: int
    trial: int
    seed: int
    inversions: int
    footrule: int | None = None
    est_cost: int | None = None
    assign_cost: int | None = None
    overflows: int = 0
    wall_ms: float | None = None
    cross_inversions: int | None = field(default=None, compare=False)

    def invariant_violations(self) -> list[str]:
        bad = []
        for name in ("inversions", "footrule", "est_cost", "assign_cost", "overflows"):
            v = getattr(self, name)
            if v is not None and v < 0:
                bad.append(f"{name} < 0")
        if self.footrule is not None:
            if not self.inversions <= self.footrule <= 2 * self.inversions:
                bad.append("K <= F <= 2K fails")
            if self.est_cost is not None and self.assign_cost is not None:
                if self.footrule > self.est_cost + self.assign_cost:
                    bad.append("F > est_cost + assign_cost")
        return bad


def dense_costs(ranker: DenseRanker, arrivals: Sequence[int]) -> tuple[int, int]:
    """(sum |rk - erank|, sum |erank - pi|) over the ranker's step log."""
    est = assign = 0
    for step in ranker.log:
        rk = arrivals[step.t - 1]
        est += abs(rk - step.erank)
        assign += abs(step.erank - step.pi)
    return est, assign


def cross_group_inversions(ranker: GeneralRanker, arrivals: Sequence[int],
                           by_rank: Sequence[int]) -> int:
    """Inversions not explained by two elements sharing the same leaf block."""
    total = count_inversions(by_rank)
    members: dict[int, list[int]] = {}
    for t, g in enumerate(ranker.groups, start=1):
        if g >= 0:
            members.setdefault(g, []).append(arrivals[t - 1])
    inside = 0
    for ranks in members.values():
        ranks.sort()
        inside += count_inversions([by_rank[r - 1] for r in ranks])
    return total - inside


def run_trial(algo: str, n: int, m: int, mode: ArrivalMode | str, seed: SeedSpec,
              height: int | None = None, timing: bool = True, trial: int = 0,
              keep_ranker: bool = False):
    """One instance, one ranker, one score.  Returns a TrialResult
    (or ``(result, ranker, arrivals)`` when ``keep_ranker``)."""
    start = time.perf_counter()
    rng = derive_rng(seed)
    inst = generate_instance(n, m, mode, seed, rng=rng)
    ranker = make_ranker(algo, n, m, rng, height=height)
    by_rank = run_online(ranker, inst.arrivals)
    res = TrialResult(algo, n, m, trial, seed.master_seed, count_inversions(by_rank))
    if m == n:
        res.footrule = footrule(by_rank, m)
    if isinstance(ranker, DenseRanker) and m == n:
        res.est_cost, res.assign_cost = dense_costs(ranker, inst.arrivals)
    res.overflows = getattr(ranker, "overflows", 0)
    if isinstance(ranker, GeneralRanker):
        res.cross_inversions = cross_group_inversions(ranker, inst.arrivals, by_rank)
    if timing:
        res.wall_ms = (time.perf_counter() - start) * 1e3
    if keep_ranker:
        return res, ranker, inst.arrivals
    return res


def _run_task(task: tuple) -> TrialResult:
    algo, n, m, mode, master, trial, height, timing = task
    return run_trial(algo, n, m, mode, trial_seed(master, n, trial), height, timing, trial)


COSTS = ("inversions", "footrule", "est_cost", "assign_cost", "overflows")


@dataclass
class CostStats:
    mean: float
    std: float
    q05: float
    q50: float
    q95: float

    @classmethod
    def of(cls, values: Sequence[float]) -> "CostStats":
        a = np.asarray(values, dtype=np.float64)
        std = float(a.std(ddof=1)) if len(a) > 1 else 0.0
        q = np.quantile(a, [0.05, 0.5, 0.95])
        return cls(float(a.mean()), std, float(q[0]), float(q[1]), float(q[2]))


@dataclass
class SizeSummary:
    algo: str
    n: int
    m: int
    trials: int
    stats: dict[str, CostStats]

    def ci95(self, cost: str = "inversions") -> tuple[float, float]:
        s = self.stats[cost]
        half = 1.96 * s.std / math.sqrt(self.trials)
        return s.mean - half, s.mean + half


def summarize(results: Sequence[TrialResult]) -> SizeSummary:
    first = results[0]
    stats = {}
    for cost in COSTS:
        vals = [getattr(r, cost) for r in results]
        if all(v is not None for v in vals):
            stats[cost] = CostStats.of(vals)
    return SizeSummary(first.algo, first.n, first.m, len(results), stats)


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    results: list[TrialResult]
    summaries: list[SizeSummary]
    slope: SlopeFit | None

    @property
    def master_seed(self) -> int:
        return self.config.master_seed

    def summary(self, n: int) -> SizeSummary:
        for s in self.summaries:
            if s.n == n:
                return s
        raise KeyError(n)

    def means(self, cost: str = "inversions") -> dict[int, float]:
        return {s.n: s.stats[cost].mean for s in self.summaries if cost in s.stats}

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "master_seed": self.master_seed,
            "summaries": [
                {"algo": s.algo, "n": s.n, "m": s.m, "trials": s.trials,
                 "stats": {k: asdict(v) for k, v in s.stats.items()}}
                for s in self.summaries
            ],
            "slope": None if self.slope is None else {
                "slope": self.slope.slope,
                "intercept": self.slope.intercept,
                "residual": self.slope.residual,
                "points": [list(p) for p in self.slope.points],
            },
        }


def worker_count(requested: int | None = None) -> int:
    if requested is not None:
        return max(1, requested)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_report(cfg: ExperimentConfig, results: Iterable[TrialResult]) -> ExperimentReport:
    results = list(results)
    by_n: dict[int, list[TrialResult]] = {}
    for r in results:
        by_n.setdefault(r.n, []).append(r)
    summaries = [summarize(by_n[n]) for n in cfg.n_values if n in by_n]
    slope = None
    pts = [(s.n, s.stats["inversions"].mean) for s in summaries]
    if len(pts) >= 3:
        try:
            slope = fit_loglog_slope(pts)
        except DegenerateInput:
            slope = None
    return ExperimentReport(cfg, results, summaries, slope)


def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentReport:
    """Run every (n, trial) pair; results are reduced in (n, trial) order."""
    tasks = [
        (cfg.algorithm, n, cfg.m_for(n), cfg.mode, cfg.master_seed, trial,
         cfg.height_for(n), cfg.record_timing)
        for n in cfg.n_values
        for trial in range(cfg.trials)
    ]
    nworkers = worker_count(workers)
    if nworkers == 1:
        results = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (8 * nworkers))))
    return build_report(cfg, results)


def verify_decomposition(results: Iterable[TrialResult]) -> bool:
    """Every trial satisfies F <= est + assign and K <= F <= 2K."""
    for r in results:
        if r.footrule is None or r.est_cost is None or r.assign_cost is None:
            return False
        if r.invariant_violations():
            return False
    return True
