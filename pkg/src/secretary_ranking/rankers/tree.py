"""Binary-tree rankers: the pure-tree sparse ranker and the tree/dense hybrid.

Nodes use heap numbering (root 1, children 2v and 2v+1, depth =
bit_length - 1).  Positions follow the symmetric (in-order) traversal, so
left subtree < node < right subtree, which is what makes a BST placement
inversion-free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from ..analysis.alpha_solver import g_alpha, solve_alpha
from ..core import TrialRng
from ..errors import ConfigError, PreconditionViolation
from ..order_structures import FreePositionSet
from .base import Comparator, OnlineRanker
from .dense import DenseRanker

INTERNAL = -1
OVERFLOW = -2


@dataclass(frozen=True)
class TreeLayout:
    """Complete tree with single-slot internal nodes at depths < height and
    leaf blocks of ``leaf_width`` slots at depth ``height``."""

    height: int
    leaf_width: int

    def __post_init__(self):
        if self.height < 0 or self.leaf_width < 0:
            raise ValueError("height and leaf_width must be non-negative")

    @property
    def size(self) -> int:
        return (self.leaf_width + 1 << self.height) - 1

    @property
    def n_leaves(self) -> int:
        return 1 << self.height

    @staticmethod
    def depth(v: int) -> int:
        return v.bit_length() - 1

    def node_position(self, v: int) -> int:
        d = v.bit_length() - 1
        if d >= self.height:
            raise ValueError(f"node {v} is not internal")
        j = v - (1 << d)
        return ((2 * j + 1) << (self.height - d - 1)) * (self.leaf_width + 1)

    def leaf_index(self, v: int) -> int:
        return v - (1 << self.height)

    def leaf_start(self, k: int) -> int:
        """First position of leaf block k (0-based, left to right)."""
        return k * (self.leaf_width + 1) + 1

    def leaf_center(self, k: int) -> int:
        return self.leaf_start(k) + (self.leaf_width - 1) // 2

    def locate_position(self, p: int) -> tuple[int, int] | None:
        """(leaf index, 1-based offset) when ``p`` lies in a leaf block, else None."""
        if self.leaf_width == 0 or not 1 <= p <= self.size or p % (self.leaf_width + 1) == 0:
            return None
        k = (p - 1) // (self.leaf_width + 1)
        return k, p - k * (self.leaf_width + 1)


class TreeStep(NamedTuple):
    t: int
    node_depth: int
    position: int
    overflow: bool


class SparseRanker(OnlineRanker):
    """Insert into a BST of height h laid out over m >= 2^(h+1) - 1 slots.

    An element that would sit deeper than h, or whose node slot was already
    used by an earlier overflow, takes the free slot nearest its parent's slot.
    """

    name = "sparse"

    def __init__(self, n: int, m: int, rng: TrialRng | None = None, height: int | None = None):
        super().__init__(n, m, rng)
        if height is None:
            height = (m + 1).bit_length() - 2
        if height < 0 or (1 << height + 1) - 1 > m:
            raise PreconditionViolation(f"height {height} needs m >= {(1 << height + 1) - 1}, got m={m}")
        self.height = height
        self.layout = TreeLayout(height + 1, 0)
        self.free = FreePositionSet(m)
        self.nodes: dict[int, int] = {}
        self.overflows = 0
        self.log: list[TreeStep] = []

    def place(self, t: int, cmp: Comparator) -> int:
        v = 1
        h = self.height
        nodes = self.nodes
        target = None
        while v.bit_length() - 1 <= h:
            if v not in nodes:
                p = self.layout.node_position(v)
                if p in self.free:
                    nodes[v] = t
                    self.free.take(p)
                    self.log.append(TreeStep(t, v.bit_length() - 1, p, False))
                    return p
                target = p
                break
            v = 2 * v + (0 if cmp(nodes[v]) else 1)
        if target is None:
            target = self.layout.node_position(v >> 1)
        p = self.free.nearest_free(target)
        self.free.take(p)
        self.overflows += 1
        self.log.append(TreeStep(t, v.bit_length() - 1, p, True))
        return p

    def trace_rows(self) -> list[tuple]:
        return [(s.t, s.node_depth, s.position, int(s.overflow)) for s in self.log]


@dataclass(frozen=True)
class GeneralHeight:
    alpha: float
    height: int
    width: int


def solve_general_height(n: int, m: int) -> GeneralHeight:
    """h = round(alpha * g(alpha) * ln n), at least 1 and capped so w >= 1."""
    if n < 2 or m < 10 * n * math.log(n):
        raise PreconditionViolation(f"need n >= 2 and m >= 10 n ln n, got n={n}, m={m}")
    a = solve_alpha(n, m)
    h = max(1, round(a * g_alpha(a) * math.log(n)))
    h_cap = (m // 2).bit_length() - 1  # largest h with m // 2^h >= 2
    h = min(h, h_cap)
    return GeneralHeight(a, h, (m >> h) - 1)


class GeneralRanker(OnlineRanker):
    """Tree of height h with single slots at internal nodes and dense blocks at leaves.

    Leaf k runs its own dense instance over a block of w slots and sees only
    elements routed to it.  Once a block has no free slot, or an arriving
    element's internal slot was taken by an overflow, the element goes to
    the globally nearest free slot (leaf block centre / node slot).
    """

    name = "general"

    def __init__(self, n: int, m: int, rng: TrialRng | None = None, height: int | None = None):
        super().__init__(n, m, rng)
        if rng is None:
            raise ValueError("general ranking needs a random generator")
        if height is None:
            if n < 2:
                height = 1
            else:
                height = solve_general_height(n, m).height
        if height < 1:
            raise ConfigError("height must be >= 1")
        w = (m >> height) - 1
        if w < 1:
            raise ConfigError(f"leaf width w = m/2^h - 1 = {w} < 1 for m={m}, h={height}")
        self.height = height
        self.width = w
        self.layout = TreeLayout(height, w)
        self.free = FreePositionSet(m)
        self.nodes: dict[int, int] = {}
        self.leaves: dict[int, DenseRanker] = {}
        self.groups: list[int] = []  # per step: leaf index, INTERNAL or OVERFLOW
        self.overflows = 0
        self.log: list[TreeStep] = []

    def _leaf(self, k: int) -> DenseRanker:
        leaf = self.leaves.get(k)
        if leaf is None:
            leaf = self.leaves[k] = DenseRanker(self.width, self.width, self.rng)
        return leaf

    def _overflow(self, t: int, depth: int, target: int) -> int:
        p = self.free.nearest_free(target)
        self.free.take(p)
        hit = self.layout.locate_position(p)
        if hit is not None:
            self._leaf(hit[0]).free.take(hit[1])
        self.overflows += 1
        self.groups.append(OVERFLOW)
        self.log.append(TreeStep(t, depth, p, True))
        return p

    def place(self, t: int, cmp: Comparator) -> int:
        v = 1
        h = self.height
        nodes = self.nodes
        while v.bit_length() - 1 < h:
            if v not in nodes:
                p = self.layout.node_position(v)
                if p not in self.free:
                    return self._overflow(t, v.bit_length() - 1, p)
                nodes[v] = t
                self.free.take(p)
                self.groups.append(INTERNAL)
                self.log.append(TreeStep(t, v.bit_length() - 1, p, False))
                return p
            v = 2 * v + (0 if cmp(nodes[v]) else 1)
        k = self.layout.leaf_index(v)
        leaf = self._leaf(k)
        if len(leaf.free) == 0:
            return self._overflow(t, h, self.layout.leaf_center(k))
        p = self.layout.leaf_start(k) - 1 + leaf.step(t, cmp)
        self.free.take(p)
        self.groups.append(k)
        self.log.append(TreeStep(t, h, p, False))
        return p

    def trace_rows(self) -> list[tuple]:
        return [(s.t, s.node_depth, s.position, int(s.overflow)) for s in self.log]
