from ..core import TrialRng
from ..errors import ConfigError
from .base import OnlineRanker, RecordingOracle, run_online
from .dense import DenseRanker, DenseStep, NoiselessRanker, RandomRanker, ScaledDenseRanker
from .tree import GeneralRanker, SparseRanker, TreeLayout, solve_general_height

RANKERS = {
    "dense": DenseRanker,
    "noiseless": NoiselessRanker,
    "scaled-dense": ScaledDenseRanker,
    "random": RandomRanker,
    "sparse": SparseRanker,
    "general": GeneralRanker,
}


def make_ranker(name: str, n: int, m: int, rng: TrialRng, height: int | None = None) -> OnlineRanker:
    try:
        cls = RANKERS[name]
    except KeyError:
        raise ConfigError(f"unknown algorithm {name!r}") from None
    if cls in (SparseRanker, GeneralRanker):
        return cls(n, m, rng, height=height)
    return cls(n, m, rng)
