"""Online secretary ranking: placement algorithms, sortedness metrics and experiments."""
from .core import ArrivalMode, Instance, SeedSpec, derive_rng, generate_instance
from .metrics import count_inversions, count_inversions_bruteforce, footrule
from .rankers import make_ranker, run_online

__version__ = "0.1.0"
