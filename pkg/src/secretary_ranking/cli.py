"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 failed check (``--check``
mode or ``oracle-check``).
"""
from __future__ import annotations

import argparse
import csv
import math
import random
import sys

from .analysis.alpha_solver import back_substitution_residual, f_alpha, g_alpha
from .analysis.bst_height import DEVROYE_K, height_samples, height_tail
from .analysis.hypergeometric import SCAN_COLUMNS, anti_concentration_scan
from .core import SeedSpec
from .errors import ConfigError, RankingError
from .harness.config import ExperimentConfig, MRule
from .harness.report import emit_report, plot_data, results_csv
from .harness.runner import run_experiment, run_trial, verify_decomposition
from .metrics import count_inversions, count_inversions_bruteforce
from .order_structures import FreePositionSet, RelativeRankIndex
from .rankers.tree import solve_general_height

EXIT_CONFIG = 2
EXIT_CHECK = 3


def _config_from_args(args) -> ExperimentConfig:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
        overrides = {}
        for key, val in (("output_csv", args.csv), ("output_json", args.json), ("output_plot", args.plot)):
            if val is not None:
                overrides[key] = val
        if overrides:
            cfg = ExperimentConfig.from_dict({**cfg.to_dict(), **overrides})
        return cfg
    if not args.algo or not args.n:
        raise ConfigError("give --config or both --algo and --n")
    rule = MRule(kind=args.m_rule, multiplier=args.multiplier, beta=args.beta,
                 value=args.m, coefficient=args.coefficient)
    return ExperimentConfig(
        algorithm=args.algo, n_values=args.n, m_rule=rule, arrival_mode=args.mode,
        trials=args.trials, master_seed=args.seed, height=args.height,
        record_timing=not args.no_timing, output_csv=args.csv,
        output_json=args.json, output_plot=args.plot,
    )


def cmd_run(args) -> int:
    cfg = _config_from_args(args)
    report = run_experiment(cfg, workers=args.workers)
    if cfg.output_csv or cfg.output_json or cfg.output_plot:
        emit_report(report, cfg.output_csv, cfg.output_json, cfg.output_plot)
    else:
        sys.stdout.write(results_csv(report.results))
    sys.stderr.write(plot_data(report))
    if report.slope is not None:
        sys.stderr.write(f"loglog slope {report.slope.slope:.4f}\n")
    if not args.check:
        return 0
    failures = []
    for r in report.results:
        for v in r.invariant_violations():
            failures.append(f"n={r.n} trial={r.trial}: {v}")
    if cfg.algorithm == "dense" and cfg.m_rule.kind == "equal-n" and not verify_decomposition(report.results):
        failures.append("cost decomposition check failed")
    if args.expect_slope:
        lo, hi = args.expect_slope
        if report.slope is None or not lo <= report.slope.slope <= hi:
            got = None if report.slope is None else round(report.slope.slope, 4)
            failures.append(f"slope {got} outside [{lo}, {hi}]")
    for line in failures:
        sys.stderr.write(f"CHECK FAIL {line}\n")
    if failures:
        return EXIT_CHECK
    sys.stderr.write("CHECK PASS\n")
    return 0


def cmd_scan(args) -> int:
    rows = anti_concentration_scan(args.sizes, args.rho_r, args.rho_t)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(SCAN_COLUMNS)
        for r in rows:
            w.writerow([r.n, r.r, r.t, r.k_star, f"{r.p_star:.12g}", f"{r.sqrt_n_p_star:.12g}"])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_solve_alpha(args) -> int:
    sol = solve_general_height(args.n, args.m)
    a = sol.alpha
    print(f"alpha={a:.12g}")
    print(f"f_alpha={f_alpha(a):.12g}")
    print(f"g_alpha={g_alpha(a):.12g}")
    print(f"height={sol.height}")
    print(f"width={sol.width}")
    print(f"residual={back_substitution_residual(args.n, args.m, a):.3g}")
    return 0


def cmd_bst_height(args) -> int:
    heights = height_samples(args.n, args.trials, args.seed)
    mean = sum(heights) / len(heights)
    est = height_tail(args.n, args.trials, args.k, heights=heights)
    lo, hi = est.wilson_interval()
    print(f"n={args.n} trials={args.trials}")
    print(f"mean_height={mean:.4f} mean_over_ln_n={mean / math.log(args.n):.4f}")
    print(f"tail_k={args.k} hits={est.hits} p_hat={est.p_hat:.6g} ci95=[{lo:.6g}, {hi:.6g}]")
    return 0


def oracle_check(cases: int = 200, ops: int = 1000, seed: int = 0) -> list[str]:
    rnd = random.Random(seed)
    failures = []
    for _ in range(cases):
        n = rnd.randint(0, 128)
        m = rnd.randint(n, 3 * n + 1)
        p = rnd.sample(range(1, m + 1), n)
        if count_inversions(p) != count_inversions_bruteforce(p):
            failures.append(f"inversions mismatch on {p}")
    m = 200
    free = FreePositionSet(m)
    naive = set(range(1, m + 1))
    for _ in range(ops):
        if not naive:
            break
        target = rnd.randint(1, m)
        want = min(naive, key=lambda q: (abs(q - target), q))
        got = free.nearest_free(target)
        if got != want:
            failures.append(f"nearest_free({target}) = {got}, expected {want}")
        if rnd.random() < 0.3:
            free.take(want)
            naive.discard(want)
    idx = RelativeRankIndex()
    keys = rnd.sample(range(10 * ops), ops)
    for k in keys[: ops // 2]:
        idx.insert(k)
    stored = keys[: ops // 2]
    for k in keys[ops // 2:]:
        if idx.rank_below(k) != sum(1 for s in stored if s < k):
            failures.append(f"rank_below({k}) mismatch")
    return failures


def cmd_oracle_check(args) -> int:
    failures = oracle_check(args.cases, args.ops, args.seed)
    for line in failures:
        print(f"FAIL {line}")
    if failures:
        return EXIT_CHECK
    print("oracle-check: all oracles agree")
    return 0


def cmd_trace(args) -> int:
    m = args.m if args.m is not None else args.n
    res, ranker, _ = run_trial(args.algo, args.n, m, args.mode, SeedSpec(args.seed, args.trial),
                               height=args.height, timing=False, keep_ranker=True)
    w = csv.writer(sys.stdout, lineterminator="\n")
    if args.algo in ("dense", "noiseless", "scaled-dense"):
        w.writerow(("t", "r_t", "x_t", "erank", "pi"))
        for t, r, x, e, p in ranker.trace_rows():
            w.writerow((t, r, repr(x), e, p))
    elif args.algo in ("sparse", "general"):
        w.writerow(("t", "node_depth", "position", "overflow_flag"))
        w.writerows(ranker.trace_rows())
    else:
        raise ConfigError(f"no trace format for {args.algo!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="secretary-ranking", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment from a config file or flags")
    run.add_argument("--config")
    run.add_argument("--algo")
    run.add_argument("--n", type=int, nargs="+")
    run.add_argument("--m-rule", default="equal-n")
    run.add_argument("--m", type=int, help="value for the explicit m rule")
    run.add_argument("--multiplier", type=float, default=10.0)
    run.add_argument("--beta", type=float, default=1.0)
    run.add_argument("--coefficient", type=float, default=5.01107)
    run.add_argument("--height", type=int)
    run.add_argument("--mode", default="uniform")
    run.add_argument("--trials", type=int, default=10)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--workers", type=int)
    run.add_argument("--no-timing", action="store_true")
    run.add_argument("--csv")
    run.add_argument("--json")
    run.add_argument("--plot")
    run.add_argument("--check", action="store_true")
    run.add_argument("--expect-slope", type=float, nargs=2, metavar=("LO", "HI"))
    run.set_defaults(func=cmd_run)

    scan = sub.add_parser("scan-anticoncentration")
    scan.add_argument("--sizes", type=int, nargs="+", default=[100, 1000, 10000])
    scan.add_argument("--rho-r", type=float, default=0.5)
    scan.add_argument("--rho-t", type=float, default=0.5)
    scan.add_argument("--out")
    scan.set_defaults(func=cmd_scan)

    sa = sub.add_parser("solve-alpha")
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--m", type=int, required=True)
    sa.set_defaults(func=cmd_solve_alpha)

    bh = sub.add_parser("bst-height")
    bh.add_argument("--n", type=int, required=True)
    bh.add_argument("--trials", type=int, required=True)
    bh.add_argument("--k", type=float, default=DEVROYE_K)
    bh.add_argument("--seed", type=int, default=0)
    bh.set_defaults(func=cmd_bst_height)

    oc = sub.add_parser("oracle-check")
    oc.add_argument("--cases", type=int, default=200)
    oc.add_argument("--ops", type=int, default=1000)
    oc.add_argument("--seed", type=int, default=0)
    oc.set_defaults(func=cmd_oracle_check)

    tr = sub.add_parser("trace")
    tr.add_argument("--algo", default="dense")
    tr.add_argument("--n", type=int, required=True)
    tr.add_argument("--m", type=int)
    tr.add_argument("--height", type=int)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--trial", type=int, default=0)
    tr.add_argument("--mode", default="uniform")
    tr.set_defaults(func=cmd_trace)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except RankingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
