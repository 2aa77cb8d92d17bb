"""Anti-concentration of the hypergeometric mode and random-BST height tails.

    python scripts/lower_bound_scan.py
"""
import math

from secretary_ranking.analysis import anti_concentration_scan
from secretary_ranking.analysis.bst_height import DEVROYE_K, expected_height_exact, height_tail_exact


def main():
    sizes = [10**2, 10**3, 10**4, 10**5]
    for rho in (0.5, 0.25):
        print(f"rho_r = rho_t = {rho}")
        for row in anti_concentration_scan(sizes, rho, rho):
            print(f"  n={row.n:>7} k*={row.k_star:>6} p*={row.p_star:.6g} sqrt(n) p*={row.sqrt_n_p_star:.5f}")
    print("random BST height (exact distribution)")
    for n in (10**2, 10**3, 10**4):
        eh = expected_height_exact(n)
        tail = height_tail_exact(n, DEVROYE_K)
        print(f"  n={n:>6} E[H]={eh:.3f} E[H]/ln n={eh / math.log(n):.3f} "
              f"Pr[H >= {DEVROYE_K} ln n]={tail:.3g} (1/n^2 = {n ** -2.0:.3g})")


if __name__ == "__main__":
    main()
