from .alpha_solver import alpha0, f_alpha, g_alpha, solve_alpha
from .bst_height import bst_height, height_tail, random_bst_height
from .fitting import SlopeFit, appendix_b_sum_check, fit_loglog_slope
from .hypergeometric import (
    HypergeomParams,
    anti_concentration_scan,
    hypergeom_pmf,
    max_pmf_over_k,
)
