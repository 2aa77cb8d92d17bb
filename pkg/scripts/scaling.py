"""Scaling sweep: dense vs baselines vs adversarial arrivals.

    python scripts/scaling.py --trials 200 --out results/scaling
"""
import argparse
from pathlib import Path

from secretary_ranking.harness import ExperimentConfig, emit_report, run_experiment

RUNS = [
    ("dense", "uniform"),
    ("noiseless", "uniform"),
    ("random", "uniform"),
    ("dense", "adversarial"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[256, 512, 1024, 2048, 4096])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--out", default="results/scaling")
    args = ap.parse_args()

    out = Path(args.out)
    print(f"{'algo':<10} {'arrivals':<12} {'slope':>7}   mean / n^1.5 per n")
    for algo, mode in RUNS:
        cfg = ExperimentConfig(algo, args.n, arrival_mode=mode, trials=args.trials, master_seed=args.seed)
        rep = run_experiment(cfg, workers=args.workers)
        stem = out / f"{algo}_{mode}"
        emit_report(rep, f"{stem}.csv", f"{stem}.json", f"{stem}.dat")
        ratios = " ".join(f"{m / n ** 1.5:8.3f}" for n, m in rep.means().items())
        print(f"{algo:<10} {mode:<12} {rep.slope.slope:7.4f}   {ratios}")


if __name__ == "__main__":
    main()
