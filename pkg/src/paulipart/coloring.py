"""Greedy and exact vertex coloring of commutation graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import CommutationGraph

DEFAULT_EXACT_CAP = 20


class InstanceTooLargeError(ValueError):
    """Raised when an exponential-time routine is asked to exceed its cap."""


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    num_colors: int

    @classmethod
    def from_colors(cls, colors: Iterable[int]) -> Coloring:
        colors = tuple(int(c) for c in colors)
        return cls(colors, max(colors, default=-1) + 1)

    def parts(self) -> list[list[int]]:
        """Vertex indices grouped by color, ordered by color index."""
        out: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.colors):
            out[c].append(v)
        return out

    def is_proper(self, g: CommutationGraph) -> bool:
        if len(self.colors) != g.vertex_count:
            return False
        if set(self.colors) != set(range(self.num_colors)):
            return False
        colors = np.asarray(self.colors)
        us, vs = np.nonzero(np.triu(g.adjacency, 1))
        return not np.any(colors[us] == colors[vs])


@dataclass(frozen=True)
class Ordering:
    """Vertex order for first-fit greedy coloring.

    ``kind`` is one of ``natural``, ``degree`` (descending degree, ties by
    index) or ``random`` (a permutation drawn from ``seed``).
    """

    kind: str = "natural"
    seed: int = 0

    KINDS = ("natural", "degree", "random")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown ordering {self.kind!r}; expected one of {self.KINDS}")

    @classmethod
    def natural(cls) -> Ordering:
        return cls("natural")

    @classmethod
    def degree(cls) -> Ordering:
        return cls("degree")

    @classmethod
    def random(cls, seed: int) -> Ordering:
        return cls("random", int(seed))

    def vertex_order(self, g: CommutationGraph) -> list[int]:
        n = g.vertex_count
        if self.kind == "natural":
            return list(range(n))
        if self.kind == "degree":
            deg = g.degrees()
            # stable sort keeps index order among equal degrees
            return np.argsort(-deg, kind="stable").tolist()
        return np.random.default_rng(self.seed).permutation(n).tolist()

    def __str__(self) -> str:
        return f"random:{self.seed}" if self.kind == "random" else self.kind


def greedy_color(g: CommutationGraph, order: Ordering | None = None) -> Coloring:
    """First-fit: each vertex takes the smallest color absent from its colored neighbors."""
    order = order or Ordering.natural()
    n = g.vertex_count
    colors = np.full(n, -1, dtype=np.int64)
    adj = g.adjacency
    for v in order.vertex_order(g):
        taken = colors[adj[v]]
        taken = taken[taken >= 0]
        used = np.zeros(len(taken) + 1, dtype=bool)
        used[taken[taken <= len(taken)]] = True
        colors[v] = int(np.argmin(used))
    return Coloring.from_colors(colors.tolist())


def best_of_orderings(g: CommutationGraph, seeds: Iterable[int] = ()) -> Coloring:
    """Fewest-color result over natural, degree and one random order per seed.

    Ties keep the first candidate in that sequence.
    """
    candidates = [Ordering.natural(), Ordering.degree()] + [Ordering.random(s) for s in seeds]
    best = None
    for order in candidates:
        c = greedy_color(g, order)
        if best is None or c.num_colors < best.num_colors:
            best = c
    return best


def _bitsets(g: CommutationGraph) -> list[int]:
    masks = []
    for row in g.adjacency:
        m = 0
        for v in np.flatnonzero(row).tolist():
            m |= 1 << v
        masks.append(m)
    return masks


def _max_clique_size(nbrs: list[int]) -> int:
    best = 0

    def expand(size: int, candidates: int) -> None:
        nonlocal best
        if candidates == 0:
            best = max(best, size)
            return
        if size + candidates.bit_count() <= best:
            return
        while candidates:
            if size + candidates.bit_count() <= best:
                return
            v = candidates.bit_length() - 1
            candidates &= ~(1 << v)
            expand(size + 1, candidates & nbrs[v])

    expand(0, (1 << len(nbrs)) - 1)
    return best


def _k_colorable(nbrs: list[int], k: int) -> bool:
    """DSATUR-ordered backtracking for a proper k-coloring."""
    n = len(nbrs)
    colors = [-1] * n
    # color_masks[c] = set of vertices currently holding color c
    color_masks = [0] * k

    def pick() -> int:
        best_v, best_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = sum(1 for c in range(k) if color_masks[c] & nbrs[v])
            key = (sat, nbrs[v].bit_count())
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def solve(colored: int, used: int) -> bool:
        if colored == n:
            return True
        v = pick()
        # a fresh color is only tried once (symmetry breaking)
        for c in range(min(used + 1, k)):
            if color_masks[c] & nbrs[v]:
                continue
            colors[v] = c
            color_masks[c] |= 1 << v
            if solve(colored + 1, max(used, c + 1)):
                return True
            color_masks[c] &= ~(1 << v)
            colors[v] = -1
        return False

    return solve(0, 0)


def exact_chromatic(g: CommutationGraph, max_vertices: int = DEFAULT_EXACT_CAP) -> int:
    """Chromatic number by branch and bound between a clique bound and greedy.

    Refuses graphs with more than ``max_vertices`` vertices.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise InstanceTooLargeError(f"exact coloring capped at {max_vertices} vertices, graph has {n}")
    if n == 0:
        return 0
    nbrs = _bitsets(g)
    lower = _max_clique_size(nbrs)
    upper = best_of_orderings(g, seeds=range(4)).num_colors
    for k in range(lower, upper):
        if _k_colorable(nbrs, k):
            return k
    return upper
