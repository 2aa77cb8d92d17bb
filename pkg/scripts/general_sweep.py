"""Inversions of the tree/dense hybrid as the number of positions grows.

    python scripts/general_sweep.py --n 512 --trials 100
"""
import argparse
import math

from secretary_ranking.harness import ExperimentConfig, MRule, run_experiment
from secretary_ranking.rankers import solve_general_height


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    n = args.n
    base = math.ceil(10 * n * math.log(n))
    ms = sorted({base, 4 * base, n**2, n**2 * 8, n**3, n**4})
    print(f"{'m':>16} {'alpha':>12} {'h':>3} {'w':>12} {'mean inv':>10} {'overflow trials':>16}")
    for m in ms:
        sol = solve_general_height(n, m)
        rep = run_experiment(ExperimentConfig("general", [n], MRule("explicit", value=m),
                                              trials=args.trials, master_seed=args.seed))
        overflowed = sum(1 for r in rep.results if r.overflows)
        print(f"{m:>16} {sol.alpha:>12.4g} {sol.height:>3} {sol.width:>12} "
              f"{rep.means()[n]:>10.2f} {overflowed:>16}")


if __name__ == "__main__":
    main()
