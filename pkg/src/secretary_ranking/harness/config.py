"""Experiment configuration, loaded from JSON with the same field names."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from ..core import ArrivalMode
from ..errors import ConfigError
from ..rankers import RANKERS

M_RULES = ("equal-n", "nlogn", "power", "explicit", "bst")


@dataclass(frozen=True)
class MRule:
    """How the position count m is derived from n.

    kind:
      equal-n   m = n
      nlogn     m = ceil(multiplier * n * ln n)
      power     m = n ** beta (rounded up)
      explicit  m = value, or value[str(n)] when value is a mapping
      bst       m = 2^(h+1) - 1 with h = ceil(coefficient * ln n)
    """

    kind: str = "equal-n"
    multiplier: float = 10.0
    beta: float = 1.0
    value: Any = None
    coefficient: float = 5.01107

    def m_for(self, n: int) -> int:
        if self.kind == "equal-n":
            return n
        if self.kind == "nlogn":
            return max(n, math.ceil(self.multiplier * n * math.log(n)))
        if self.kind == "power":
            if float(self.beta).is_integer():
                return n ** int(self.beta)
            return math.ceil(n ** self.beta)
        if self.kind == "explicit":
            if isinstance(self.value, dict):
                try:
                    return int(self.value[str(n)])
                except KeyError:
                    raise ConfigError(f"explicit m rule has no entry for n={n}") from None
            if self.value is None:
                raise ConfigError("explicit m rule needs a value")
            return int(self.value)
        if self.kind == "bst":
            return (1 << self.bst_height(n) + 1) - 1
        raise ConfigError(f"unknown m rule {self.kind!r}")

    def bst_height(self, n: int) -> int:
        return max(0, math.ceil(self.coefficient * math.log(n)))


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str
    n_values: list[int]
    m_rule: MRule = field(default_factory=MRule)
    arrival_mode: str = "uniform"
    trials: int = 1
    master_seed: int = 0
    height: int | None = None
    record_timing: bool = True
    output_csv: str | None = None
    output_json: str | None = None
    output_plot: str | None = None

    def __post_init__(self):
        if self.algorithm not in RANKERS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; choose from {sorted(RANKERS)}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        ns = list(self.n_values)
        if not ns or any(int(n) != n or n < 1 for n in ns):
            raise ConfigError("n_values must be positive integers")
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ConfigError("n_values must be strictly increasing")
        if self.m_rule.kind not in M_RULES:
            raise ConfigError(f"unknown m rule {self.m_rule.kind!r}")
        if not 0 <= self.master_seed < 1 << 64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        try:
            ArrivalMode.parse(self.arrival_mode)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        for n in ns:
            m = self.m_for(n)
            if m < n:
                raise ConfigError(f"m rule gives m={m} < n={n}")

    @property
    def mode(self) -> ArrivalMode:
        return ArrivalMode.parse(self.arrival_mode)

    def m_for(self, n: int) -> int:
        return self.m_rule.m_for(n)

    def height_for(self, n: int) -> int | None:
        if self.height is not None:
            return self.height
        if self.algorithm == "sparse" and self.m_rule.kind == "bst":
            return self.m_rule.bst_height(n)
        return None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        obj = dict(obj)
        known = set(cls.__dataclass_fields__)
        extra = set(obj) - known
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        rule = obj.get("m_rule", {})
        if isinstance(rule, str):
            rule = {"kind": rule}
        try:
            obj["m_rule"] = MRule(**rule)
            obj["n_values"] = [int(n) for n in obj.get("n_values", [])]
            return cls(**obj)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        try:
            obj = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_dict(obj)
