"""Longest odd cycle, largest biclique and their maximum, by exhaustive search.

``a(G)`` is 1 when ``G`` has no odd cycle; ``b(G)`` is 0 when ``G`` has no edge.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple

from ..caps import enforce
from ..graph import Graph


class CParams(NamedTuple):
    a: int
    b: int
    c: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def longest_odd_cycle(g: Graph) -> tuple[int, ...]:
    """Vertices of a longest odd cycle, or ``()`` when there is none."""
    masks = g.adjacency_masks()
    best: list[int] = []
    stack: list[int] = []

    def dfs(start: int, v: int, avail: int) -> None:
        nonlocal best
        length = len(stack)
        if length >= 3 and length % 2 == 1 and masks[v] >> start & 1 and length > len(best):
            best = list(stack)
        if length + avail.bit_count() <= len(best):
            return
        for w in _bits(masks[v] & avail):
            stack.append(w)
            dfs(start, w, avail & ~(1 << w))
            stack.pop()

    for s in range(g.n):
        # the smallest vertex of each cycle is its start
        higher = ((1 << g.n) - 1) & ~((1 << (s + 1)) - 1)
        if higher.bit_count() + 1 <= len(best):
            break
        stack[:] = [s]
        dfs(s, s, higher)
    return tuple(best)


def largest_biclique(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sides of a largest balanced complete bipartite subgraph ``K_{t,t}``."""
    masks = g.adjacency_masks()
    best: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    t = 1
    while 2 * t <= g.n:
        found = None
        for side in combinations(range(g.n), t):
            common = (1 << g.n) - 1
            for v in side:
                common &= masks[v]
            if common.bit_count() >= t:
                found = (side, tuple(list(_bits(common))[:t]))
                break
        if found is None:
            break
        best = found
        t += 1
    return best


def c_param(g: Graph, cap: int | None = None) -> CParams:
    enforce("c_param", g.n, cap)
    cyc = longest_odd_cycle(g)
    a = len(cyc) if cyc else 1
    b = len(largest_biclique(g)[0])
    return CParams(a, b, max(a, b))
