"""Exact treewidth, pathwidth and treedepth with checkable witnesses.

All three work on bitmask vertex sets.

Treewidth decides ``tw <= k`` for increasing ``k`` by recursion over connected
sets ``C`` with boundary ``N(C)`` of size at most ``k``: ``C`` is good when some
``v`` in ``C`` leaves components that are all good, giving the bag
``N(C) + {v}``. Taking ``v`` to be the last vertex of ``C`` in an optimal
elimination ordering shows the recursion is exact. Sets are memoised, so the
cost is governed by the number of small-boundary connected sets rather than
``2**n``.

Pathwidth uses the vertex separation number, a subset DP over orderings.
Treedepth branches on the root of each connected set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..caps import enforce
from ..graph import Graph


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components(masks: Sequence[int], within: int) -> list[int]:
    comps = []
    rest = within
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def _boundary(masks: Sequence[int], s: int) -> int:
    acc = 0
    for v in _bits(s):
        acc |= masks[v]
    return acc & ~s


@dataclass(frozen=True)
class Decomposition:
    kind: str  # "tree" or "path"
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "bags": [sorted(b) for b in self.bags],
            "tree_edges": [list(e) for e in self.tree_edges],
            "width": self.width,
        }


def validate_decomposition(g: Graph, d: Decomposition) -> list[str]:
    """Problems with ``d`` as a decomposition of ``g``; empty when valid."""
    problems = []
    nb = len(d.bags)
    if nb == 0:
        return ["no bags"]
    adj: list[set[int]] = [set() for _ in range(nb)]
    for a, b in d.tree_edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            problems.append(f"bad tree edge ({a}, {b})")
            continue
        adj[a].add(b)
        adj[b].add(a)
    if len(d.tree_edges) != nb - 1 or not _connected_index_set(adj, set(range(nb))):
        problems.append("bag graph is not a tree")
    if d.kind == "path":
        if any(set(e) != {i, i + 1} for i, e in enumerate(sorted(tuple(sorted(e)) for e in d.tree_edges))):
            problems.append("path decomposition bags are not in path order")
    for v in range(g.n):
        holding = {i for i, b in enumerate(d.bags) if v in b}
        if not holding:
            problems.append(f"vertex {v} in no bag")
        elif not _connected_index_set(adj, holding):
            problems.append(f"bags holding vertex {v} are not connected")
    for u, v in g.edges:
        if not any(u in b and v in b for b in d.bags):
            problems.append(f"edge ({u}, {v}) not covered")
    for b in d.bags:
        if any(not 0 <= v < g.n for v in b):
            problems.append("bag contains a non-vertex")
            break
    return problems


def _connected_index_set(adj: list[set[int]], nodes: set[int]) -> bool:
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == nodes


def degeneracy(g: Graph) -> int:
    """Largest minimum degree over subgraphs; a lower bound for treewidth."""
    deg = {v: g.degree(v) for v in range(g.n)}
    alive = set(range(g.n))
    best = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        best = max(best, deg[v])
        alive.remove(v)
        for w in g.neighbours(v):
            if w in alive:
                deg[w] -= 1
    return best


class _TreewidthSearch:
    def __init__(self, g: Graph, k: int):
        self.masks = g.adjacency_masks()
        self.k = k
        self.memo: dict[int, int | None] = {}

    def good(self, c: int) -> bool:
        if c in self.memo:
            return self.memo[c] is not None
        n_c = _boundary(self.masks, c)
        if (c | n_c).bit_count() <= self.k + 1:
            self.memo[c] = -1
            return True
        self.memo[c] = None
        if n_c.bit_count() + 1 > self.k + 1:
            return False
        # vertices touching the boundary first; they tend to split C
        order = sorted(_bits(c), key=lambda v: (-(self.masks[v] & n_c).bit_count(), v))
        for v in order:
            rest = c & ~(1 << v)
            ok = True
            for comp in _components(self.masks, rest):
                if _boundary(self.masks, comp).bit_count() > self.k or not self.good(comp):
                    ok = False
                    break
            if ok:
                self.memo[c] = v
                return True
        return False

    def build(self, full: int) -> Decomposition:
        bags: list[frozenset[int]] = []
        edges: list[tuple[int, int]] = []

        def node(c: int, parent: int | None) -> None:
            v = self.memo[c]
            n_c = _boundary(self.masks, c)
            bag = c | n_c if v == -1 else n_c | (1 << v)
            idx = len(bags)
            bags.append(frozenset(_bits(bag)))
            if parent is not None:
                edges.append((parent, idx))
            if v != -1:
                for comp in _components(self.masks, c & ~(1 << v)):
                    node(comp, idx)

        prev_root = None
        for comp in _components(self.masks, full):
            here = len(bags)
            node(comp, None)
            if prev_root is not None:
                edges.append((prev_root, here))
            prev_root = here
        if not bags:
            bags.append(frozenset())
        return Decomposition("tree", tuple(bags), tuple(edges))


def treewidth_exact(g: Graph, cap: int | None = None) -> tuple[int, Decomposition]:
    enforce("treewidth", g.n, cap)
    if g.n == 0:
        return -1, Decomposition("tree", (frozenset(),), ())
    full = (1 << g.n) - 1
    for k in range(degeneracy(g), g.n):
        search = _TreewidthSearch(g, k)
        if all(search.good(c) for c in _components(search.masks, full)):
            return k, search.build(full)
    raise AssertionError("unreachable: every graph has treewidth at most n - 1")


def pathwidth_exact(g: Graph, cap: int | None = None) -> tuple[int, Decomposition]:
    """Vertex separation number by DP over vertex prefixes of an ordering."""
    enforce("pathwidth", g.n, cap)
    n = g.n
    if n == 0:
        return -1, Decomposition("path", (frozenset(),), ())
    masks = g.adjacency_masks()
    size = 1 << n
    # sep[S]: number of vertices of S with a neighbour outside S
    sep = [0] * size
    for s in range(1, size):
        low = s & -s
        v = low.bit_length() - 1
        prev = s ^ low
        # v joins; members of prev whose last outside neighbour was v leave the boundary
        cnt = sep[prev]
        for u in _bits(prev & masks[v]):
            if not (masks[u] & ~s):
                cnt -= 1
        if masks[v] & ~s:
            cnt += 1
        sep[s] = cnt
    inf = n + 1
    best = [inf] * size
    last = [-1] * size
    best[0] = 0
    for s in range(1, size):
        here = sep[s]
        b, arg = inf, -1
        for v in _bits(s):
            c = best[s ^ (1 << v)]
            if c < b:
                b, arg = c, v
        best[s] = max(b, here)
        last[s] = arg
    order = []
    s = size - 1
    while s:
        v = last[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    bags = []
    prefix = 0
    for v in order:
        boundary = [u for u in _bits(prefix) if masks[u] & ~prefix]
        bags.append(frozenset([v, *boundary]))
        prefix |= 1 << v
    edges = tuple((i, i + 1) for i in range(len(bags) - 1))
    return best[size - 1], Decomposition("path", tuple(bags), edges)


@dataclass(frozen=True)
class ElimForest:
    parent: tuple[int, ...]  # -1 for roots

    @property
    def height(self) -> int:
        depth: dict[int, int] = {}

        def d(v: int) -> int:
            if v not in depth:
                p = self.parent[v]
                depth[v] = 1 if p < 0 else d(p) + 1
            return depth[v]

        return max((d(v) for v in range(len(self.parent))), default=0)

    def ancestors(self, v: int) -> list[int]:
        out = []
        p = self.parent[v]
        while p >= 0:
            out.append(p)
            p = self.parent[p]
        return out

    def to_json(self) -> dict:
        return {"parent": list(self.parent), "height": self.height}


def validate_elim_forest(g: Graph, f: ElimForest) -> list[str]:
    problems = []
    if len(f.parent) != g.n:
        return [f"forest has {len(f.parent)} vertices, graph has {g.n}"]
    for v in range(g.n):
        seen = {v}
        p = f.parent[v]
        while p >= 0:
            if p in seen or not 0 <= p < g.n:
                return [f"parent pointers from {v} do not reach a root"]
            seen.add(p)
            p = f.parent[p]
    for u, v in g.edges:
        if u not in f.ancestors(v) and v not in f.ancestors(u):
            problems.append(f"edge ({u}, {v}) not in the closure")
    return problems


def treedepth_exact(g: Graph, cap: int | None = None) -> tuple[int, ElimForest]:
    enforce("treedepth", g.n, cap)
    masks = g.adjacency_masks()
    memo: dict[int, tuple[int, int]] = {}

    def td(c: int) -> int:
        if c in memo:
            return memo[c][0]
        if c & (c - 1) == 0:
            memo[c] = (1, c.bit_length() - 1)
            return 1
        best, arg = c.bit_count() + 1, -1
        order = sorted(_bits(c), key=lambda v: (-(masks[v] & c).bit_count(), v))
        for v in order:
            worst = 0
            for comp in _components(masks, c & ~(1 << v)):
                worst = max(worst, td(comp))
                if worst + 1 >= best:
                    break
            if worst + 1 < best:
                best, arg = worst + 1, v
                if best == 2:  # connected with an edge: cannot do better
                    break
        memo[c] = (best, arg)
        return best

    parent = [-1] * g.n
    height = 0

    def attach(c: int, p: int) -> None:
        td(c)
        root = memo[c][1]
        parent[root] = p
        for comp in _components(masks, c & ~(1 << root)):
            attach(comp, root)

    for comp in _components(masks, (1 << g.n) - 1):
        height = max(height, td(comp))
        attach(comp, -1)
    return height, ElimForest(tuple(parent))
