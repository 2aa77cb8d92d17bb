"""Problem instances, arrival orders and the per-trial randomness contract.

Seed derivation
---------------
Every trial owns one :class:`TrialRng`.  Its state is derived from
``(master_seed, trial_index)`` through numpy's ``SeedSequence`` with
``entropy=master_seed`` and ``spawn_key=(trial_index,)``, feeding a PCG64
bit generator.  Both SeedSequence hashing and the PCG64 output stream are
fixed by numpy's stability guarantees, so streams are identical across
platforms, and distinct trial indices land on statistically independent
streams.  All draws are built from the raw 64-bit outputs:

* ``uniform()`` uses the top 53 bits, giving a double in ``[0, 1)``;
* ``randbelow(k)`` uses the top ``bit_length(k - 1)`` bits with rejection,
  so it is exactly uniform (no modulo bias).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidDimensions

_BLOCK = 512
_INV_2_53 = 1.0 / (1 << 53)


class ArrivalMode(enum.Enum):
    UNIFORM = "uniform"
    ADVERSARIAL = "adversarial"

    @classmethod
    def parse(cls, value: "ArrivalMode | str") -> "ArrivalMode":
        if isinstance(value, cls):
            return value
        aliases = {
            "uniform": cls.UNIFORM,
            "uniformrandom": cls.UNIFORM,
            "random": cls.UNIFORM,
            "adversarial": cls.ADVERSARIAL,
            "adversarialminmax": cls.ADVERSARIAL,
            "minmax": cls.ADVERSARIAL,
        }
        key = str(value).replace("-", "").replace("_", "").lower()
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown arrival mode {value!r}") from None


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    trial_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < 1 << 64:
            raise ValueError("master_seed must fit in 64 unsigned bits")
        if self.trial_index < 0:
            raise ValueError("trial_index must be non-negative")


class TrialRng:
    """Buffered view over a PCG64 stream; see the module docstring."""

    def __init__(self, seed: SeedSpec):
        self.seed = seed
        ss = np.random.SeedSequence(entropy=seed.master_seed, spawn_key=(seed.trial_index,))
        self._bitgen = np.random.PCG64(ss)
        self._buf: list[int] = []
        self._pos = 0

    def next_u64(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self._bitgen.random_raw(_BLOCK).tolist()
            self._pos = 0
        x = self._buf[self._pos]
        self._pos += 1
        return x

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * _INV_2_53

    def randbelow(self, k: int) -> int:
        if k <= 0:
            raise ValueError("randbelow needs k >= 1")
        if k == 1:
            return 0
        shift = 64 - (k - 1).bit_length()
        while True:
            x = self.next_u64() >> shift
            if x < k:
                return x

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_rng(seed: SeedSpec) -> TrialRng:
    return TrialRng(seed)


@dataclass(frozen=True)
class Instance:
    """An arrival sequence: ``arrivals[t-1]`` is the true rank of the t-th arrival."""

    n: int
    m: int
    arrivals: tuple[int, ...]

    def __post_init__(self):
        _check_dims(self.n, self.m)
        if len(self.arrivals) != self.n or sorted(self.arrivals) != list(range(1, self.n + 1)):
            raise InvalidDimensions("arrivals must be a permutation of 1..n")

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "m": self.m, "arrivals": list(self.arrivals)})

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        obj = json.loads(text)
        return cls(int(obj["n"]), int(obj["m"]), tuple(int(a) for a in obj["arrivals"]))


def _check_dims(n: int, m: int) -> None:
    if n < 1:
        raise InvalidDimensions(f"need n >= 1, got n={n}")
    if m < n:
        raise InvalidDimensions(f"need m >= n, got n={n}, m={m}")


def adversarial_arrivals(n: int, flips: Iterable[bool]) -> list[int]:
    """Min/max arrival order: a true flip emits the largest unseen rank, false the smallest."""
    lo, hi = 1, n
    out = []
    it = iter(flips)
    while lo <= hi:
        if lo == hi:
            out.append(lo)
            break
        if next(it):
            out.append(hi)
            hi -= 1
        else:
            out.append(lo)
            lo += 1
    return out


def generate_instance(n: int, m: int, mode: ArrivalMode | str, seed: SeedSpec,
                      rng: TrialRng | None = None) -> Instance:
    """Build an instance; pass ``rng`` to keep drawing from an existing stream."""
    _check_dims(n, m)
    mode = ArrivalMode.parse(mode)
    if rng is None:
        rng = derive_rng(seed)
    if mode is ArrivalMode.UNIFORM:
        arrivals = list(range(1, n + 1))
        rng.shuffle(arrivals)
    else:
        arrivals = adversarial_arrivals(n, iter(rng.coin, None))
    return Instance(n, m, tuple(arrivals))


def is_minmax_prefix(prefix: Sequence[int], n: int) -> bool:
    """True when the set of ranks in ``prefix`` is {1..i} U {j..n} for some i, j."""
    seen = set(prefix)
    i = 0
    while i + 1 in seen:
        i += 1
    j = n + 1
    while j - 1 in seen and j - 1 > i:
        j -= 1
    return len(seen) == i + (n + 1 - j)
