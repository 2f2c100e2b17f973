"""Exhaustive minor and topological-minor containment, Hadwiger and Hajos numbers."""

from __future__ import annotations

from typing import Sequence

from ..caps import enforce
from ..generators import binary_tree, complete
from ..graph import Edge, Graph, longest_path
from ..minors import MinorModel, TopologicalModel, _placement_order, _twin_classes, find_minor_model


def minor_test(host: Graph, pattern: Graph, cap: int | None = None) -> MinorModel | None:
    limit = enforce("minor", host.n, cap)
    return find_minor_model(host, pattern, cap=limit)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def topological_minor_test(host: Graph, pattern: Graph, cap: int | None = None) -> TopologicalModel | None:
    """Branch vertices by backtracking, then internally disjoint paths routed edge by edge.

    Returns None only after every assignment and routing has been tried.
    """
    enforce("topological", host.n, cap)
    t = pattern.n
    if t == 0:
        return TopologicalModel(host, pattern, (), {})
    if t > host.n or pattern.m > host.m:
        return None
    masks = host.adjacency_masks()
    order = _placement_order(pattern)
    twin = _twin_classes(pattern)
    edges = list(pattern.edges)
    candidates = {x: [v for v in range(host.n) if host.degree(v) >= pattern.degree(x)] for x in range(t)}
    branch: dict[int, int] = {}
    routes: dict[Edge, list[int]] = {}

    def route_order() -> list[Edge]:
        # edges between low-degree host vertices are most constrained
        return sorted(edges, key=lambda e: (host.degree(branch[e[0]]) + host.degree(branch[e[1]]), e))

    def reachable(a: int, b: int, free: int) -> bool:
        seen = 1 << a
        frontier = seen
        target = 1 << b
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            if nxt & target:
                return True
            frontier = nxt & free & ~seen
            seen |= frontier
        return False

    def paths_between(a: int, b: int, free: int):
        """Simple paths a..b with interior inside ``free``, shorter ones first per DFS level."""
        stack = [a]

        def dfs(v: int, avail: int):
            if masks[v] >> b & 1:
                yield list(stack) + [b]
            nbrs = masks[v] & avail
            for w in _bits(nbrs):
                stack.append(w)
                yield from dfs(w, avail & ~(1 << w))
                stack.pop()

        yield from dfs(a, free)

    def route(i: int, plan: list[Edge], free: int) -> bool:
        if i == len(plan):
            return True
        for e in plan[i:]:
            if not (masks[branch[e[0]]] >> branch[e[1]] & 1) and not reachable(branch[e[0]], branch[e[1]], free):
                return False
        x, y = plan[i]
        a, b = branch[x], branch[y]
        for p in paths_between(a, b, free):
            interior = 0
            for v in p[1:-1]:
                interior |= 1 << v
            routes[(x, y)] = p
            if route(i + 1, plan, free & ~interior):
                return True
        routes.pop((x, y), None)
        return False

    def assign(pos: int, used: int) -> bool:
        if pos == t:
            free = ((1 << host.n) - 1) & ~used
            return route(0, route_order(), free)
        x = order[pos]
        floor = max((branch[y] for y in branch if twin[y] == twin[x]), default=-1)
        for v in candidates[x]:
            if used >> v & 1 or v <= floor:
                continue
            branch[x] = v
            if assign(pos + 1, used | (1 << v)):
                return True
            del branch[x]
        return False

    if not assign(0, 0):
        return None
    model = TopologicalModel(host, pattern, tuple(branch[x] for x in range(t)), {e: tuple(p) for e, p in routes.items()})
    model.validate()
    return model


def hadwiger(g: Graph, cap: int | None = None) -> tuple[int, MinorModel | None]:
    """Largest ``t`` with ``K_t`` a minor, with its model."""
    limit = enforce("minor", g.n, cap)
    if g.n == 0:
        return 0, None
    top = _clique_bound(g)
    for t in range(top, 0, -1):
        model = find_minor_model(g, complete(t), cap=limit)
        if model is not None:
            return t, model
    raise AssertionError("unreachable: K_1 is a minor of every nonempty graph")


def hajos(g: Graph, cap: int | None = None) -> tuple[int, TopologicalModel | None]:
    """Largest ``t`` with ``K_t`` a topological minor, with its model."""
    limit = enforce("topological", g.n, cap)
    if g.n == 0:
        return 0, None
    top = _clique_bound(g)
    degs = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    while top > 1 and degs[top - 1] < top - 1:
        top -= 1
    for t in range(top, 0, -1):
        model = topological_minor_test(g, complete(t), cap=limit)
        if model is not None:
            return t, model
    raise AssertionError("unreachable: K_1 is a topological minor of every nonempty graph")


def _clique_bound(g: Graph) -> int:
    t = g.n
    while t > 1 and t * (t - 1) // 2 > g.m:
        t -= 1
    return t


def find_binary_tree_subdivision(g: Graph, h: int, cap: int | None = None) -> TopologicalModel | None:
    """A subdivision of the complete binary tree with ``h`` levels as a subgraph of ``g``."""
    return topological_minor_test(g, binary_tree(h), cap=cap)


def path_subgraph(g: Graph, length: int) -> Sequence[int] | None:
    """A path with ``length`` edges, if one exists."""
    p = longest_path(g, limit=length)
    return p if len(p) - 1 >= length else None
