"""Greatest average degree of a shallow minor, by exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..caps import enforce
from ..graph import Graph


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class NablaWitness:
    parts: tuple[tuple[int, ...], ...]  # branch sets of the contraction
    kept: tuple[int, ...]  # indices of parts forming the densest subgraph


def _radius_at_most(masks, part: int, r: int) -> bool:
    for c in _bits(part):
        seen = 1 << c
        frontier = seen
        for _ in range(r):
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            frontier = nxt & part & ~seen
            seen |= frontier
        if seen == part:
            return True
    return False


def _connected_sets_from(masks, v: int, within: int):
    """Connected subsets of ``within`` containing ``v``."""

    def grow(current: int, frontier: int, excluded: int):
        yield current
        for w in _bits(frontier & ~excluded):
            bit = 1 << w
            excluded |= bit
            yield from grow(current | bit, (frontier | masks[w]) & within & ~current & ~bit, excluded)

    yield from grow(1 << v, masks[v] & within, 1 << v)


def _densest(n_parts: int, adj: list[int]) -> tuple[Fraction, int]:
    best, arg = Fraction(0), 1
    for s in range(1, 1 << n_parts):
        twice_e = sum((adj[u] & s).bit_count() for u in _bits(s))
        val = Fraction(twice_e, s.bit_count())
        if val > best:
            best, arg = val, s
    return best, arg


def nabla_r(g: Graph, r: int | None = None, cap: int | None = None) -> tuple[Fraction, NablaWitness]:
    """Exact ``nabla_r`` (``r=None`` for unbounded radius) with a witnessing contraction.

    Enumerates every partition of ``V(g)`` into connected parts of radius at
    most ``r``, contracts, and takes the densest subgraph of the result.
    Deleted vertices are covered by singleton parts left out of the subgraph.
    """
    enforce("nabla", g.n, cap)
    if g.n == 0:
        return Fraction(0), NablaWitness((), ())
    masks = g.adjacency_masks()
    full = (1 << g.n) - 1
    best = (Fraction(-1), NablaWitness((), ()))
    cache: dict[tuple[int, ...], tuple[Fraction, int]] = {}
    parts: list[int] = []

    def finish() -> None:
        nonlocal best
        owner = {}
        for i, p in enumerate(parts):
            for v in _bits(p):
                owner[v] = i
        adj = [0] * len(parts)
        for u, v in g.edges:
            a, b = owner[u], owner[v]
            if a != b:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        key = tuple(adj)
        if key not in cache:
            cache[key] = _densest(len(parts), adj)
        val, sub = cache[key]
        if val > best[0]:
            best = (val, NablaWitness(tuple(tuple(_bits(p)) for p in parts), tuple(_bits(sub))))

    def split(free: int) -> None:
        if not free:
            finish()
            return
        v = (free & -free).bit_length() - 1
        for part in _connected_sets_from(masks, v, free):
            if r is not None and not _radius_at_most(masks, part, r):
                continue
            parts.append(part)
            split(free & ~part)
            parts.pop()

    split(full)
    return best
