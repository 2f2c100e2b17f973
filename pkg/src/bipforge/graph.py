"""Core graph types: simple undirected graphs, subgraph references and 2-colourings.

Vertices are the integers ``0..n-1``. Every subgraph in the package is a
:class:`SubgraphRef` into one host :class:`Graph`, so unions are set unions and
equality is structural.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "_adj", "_edges", "labels", "_masks")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels=None):
        if n < 0:
            raise DomainError(f"negative vertex count {n}")
        seen: set[Edge] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            key = norm_edge(u, v)
            if key in seen:
                raise DomainError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._edges = tuple(sorted(seen))
        self.labels = dict(labels) if labels else {}
        self._masks = None

    @classmethod
    def from_edge_set(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        """Like the constructor, but silently merges duplicate edges."""
        return cls(n, {norm_edge(int(u), int(v)) for u, v in edges}, labels)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        a, b = (u, v) if len(self._adj[u]) <= len(self._adj[v]) else (v, u)
        return b in self._adj[a]

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def average_degree(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(2 * self.m, self.n)

    def adjacency_masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks (bit ``u`` set for each neighbour)."""
        if self._masks is None:
            masks = []
            for a in self._adj:
                mask = 0
                for u in a:
                    mask |= 1 << u
                masks.append(mask)
            self._masks = tuple(masks)
        return self._masks

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph relabelled to ``0..k-1`` in ascending vertex order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[u], index[v]) for u, v in self._edges if u in index and v in index]
        return Graph(len(vs), edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SubgraphRef:
    """A subgraph of some host graph, given by vertex and edge subsets."""

    vertices: frozenset[int] = frozenset()
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(norm_edge(u, v) for u, v in self.edges))
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside the vertex set")

    @classmethod
    def induced(cls, host: Graph, vertices: Iterable[int]) -> "SubgraphRef":
        vs = frozenset(vertices)
        es = [(u, v) for u, v in host.edges if u in vs and v in vs]
        return cls(vs, frozenset(es))

    @classmethod
    def from_path(cls, path: Sequence[int]) -> "SubgraphRef":
        return cls(frozenset(path), frozenset(norm_edge(a, b) for a, b in zip(path, path[1:])))

    @classmethod
    def whole(cls, host: Graph) -> "SubgraphRef":
        return cls(frozenset(range(host.n)), frozenset(host.edges))

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj.values():
            a.sort()
        return adj

    def check_against(self, host: Graph) -> None:
        for v in self.vertices:
            if not 0 <= v < host.n:
                raise DomainError(f"subgraph vertex {v} not in host with n={host.n}")
        for u, v in self.edges:
            if not host.has_edge(u, v):
                raise DomainError(f"subgraph edge ({u}, {v}) is not a host edge")

    def to_graph(self) -> tuple[Graph, list[int]]:
        """Relabelled copy plus the list mapping new ids back to host ids."""
        vs = sorted(self.vertices)
        index = {v: i for i, v in enumerate(vs)}
        return Graph(len(vs), [(index[u], index[v]) for u, v in self.edges]), vs


class Colour(enum.Enum):
    BLACK = 0
    WHITE = 1

    def flipped(self) -> "Colour":
        return Colour.WHITE if self is Colour.BLACK else Colour.BLACK


@dataclass(frozen=True, eq=True)
class TwoColouring:
    colour: Mapping[int, Colour] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "colour", dict(self.colour))

    __hash__ = None  # type: ignore[assignment]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.colour)

    def __getitem__(self, v: int) -> Colour:
        return self.colour[v]

    def __contains__(self, v: int) -> bool:
        return v in self.colour

    def is_proper(self, edges: Iterable[Edge]) -> bool:
        """True when every edge with both ends coloured is bichromatic."""
        c = self.colour
        return all(c[u] != c[v] for u, v in edges if u in c and v in c)

    def to_json(self) -> dict[str, str]:
        return {str(v): ("B" if col is Colour.BLACK else "W") for v, col in sorted(self.colour.items())}


@dataclass(frozen=True)
class OddCycleWitness:
    """A closed walk ``cycle[0], ..., cycle[-1], cycle[0]`` of odd length."""

    cycle: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)


def _adjacency_of(g: Graph | SubgraphRef) -> tuple[list[int], Mapping[int, Sequence[int]]]:
    if isinstance(g, Graph):
        return list(range(g.n)), {v: g.neighbours(v) for v in range(g.n)}
    return sorted(g.vertices), g.adjacency()


def two_colour(g: Graph | SubgraphRef) -> TwoColouring | OddCycleWitness:
    """Canonical proper 2-colouring, or an odd cycle proving none exists.

    In every component the minimum-index vertex is black.
    """
    order, adj = _adjacency_of(g)
    colour: dict[int, Colour] = {}
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in order:
        if root in colour:
            continue
        colour[root] = Colour.BLACK
        parent[root] = -1
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = colour[u].flipped()
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return OddCycleWitness(_tree_cycle(u, w, parent, depth))
    return TwoColouring(colour)


def _tree_cycle(u: int, w: int, parent: dict[int, int], depth: dict[int, int]) -> tuple[int, ...]:
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor; right repeats it
    return tuple(left + right[-2::-1])


def is_bipartite(g: Graph | SubgraphRef) -> bool:
    return isinstance(two_colour(g), TwoColouring)


def switch(c: TwoColouring, part: Iterable[int]) -> TwoColouring:
    """Flip black and white on ``part``; other vertices keep their colour."""
    part = set(part)
    missing = part - c.colour.keys()
    if missing:
        raise DomainError(f"switch part has uncoloured vertices {sorted(missing)[:5]}")
    return TwoColouring({v: (col.flipped() if v in part else col) for v, col in c.colour.items()})


def bfs_distances(adj: Mapping[int, Sequence[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def eccentricities(g: Graph | SubgraphRef, vertex: int) -> dict[int, int]:
    """Eccentricity of every vertex in the component containing ``vertex``."""
    _, adj = _adjacency_of(g)
    if vertex not in adj:
        raise DomainError(f"vertex {vertex} not in graph")
    component = bfs_distances(adj, vertex)
    return {v: max(bfs_distances(adj, v).values()) for v in sorted(component)}


def centre(g: Graph | SubgraphRef, vertex: int) -> tuple[int, int]:
    """(centre vertex, radius) of the component of ``vertex``; smallest index wins ties."""
    ecc = eccentricities(g, vertex)
    best = min(ecc, key=lambda v: (ecc[v], v))
    return best, ecc[best]


def radius(g: Graph | SubgraphRef, component_of: int) -> int:
    return centre(g, component_of)[1]


def components(g: Graph | SubgraphRef) -> list[list[int]]:
    order, adj = _adjacency_of(g)
    seen: set[int] = set()
    out = []
    for v in order:
        if v not in seen:
            comp = sorted(bfs_distances(adj, v))
            seen.update(comp)
            out.append(comp)
    return out


def is_connected(g: Graph | SubgraphRef) -> bool:
    return len(components(g)) <= 1


def assemble(host: Graph, parts: Sequence[SubgraphRef]) -> SubgraphRef:
    """Union of subgraphs of ``host``."""
    vertices: set[int] = set()
    edges: set[Edge] = set()
    for part in parts:
        part.check_against(host)
        vertices |= part.vertices
        edges |= part.edges
    return SubgraphRef(frozenset(vertices), frozenset(edges))


def is_path_in(host: Graph, path: Sequence[int]) -> bool:
    return (
        len(set(path)) == len(path)
        and all(0 <= v < host.n for v in path)
        and all(host.has_edge(a, b) for a, b in zip(path, path[1:]))
    )


def longest_path(g: Graph, limit: int | None = None) -> list[int]:
    """Longest simple path by exhaustive DFS.

    Stops early at the first path with ``limit`` edges. Branches are pruned when
    the vertices still reachable from the current end cannot beat the best path.
    Intended for ``n <= 20``; larger graphs need a small ``limit``.
    """
    if g.n == 0:
        return []
    masks = g.adjacency_masks()
    best: list[int] = [0]
    target = None if limit is None else limit + 1
    cap = g.n if target is None else min(g.n, target)

    def reachable(v: int, free: int) -> int:
        seen = 0
        frontier = masks[v] & free
        while frontier:
            seen |= frontier
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & free & ~seen
        return bin(seen).count("1")

    path: list[int] = []

    def dfs(v: int, free: int) -> bool:
        nonlocal best
        if len(path) > len(best):
            best = list(path)
            if len(best) >= cap:
                return True
        if len(path) + reachable(v, free) <= len(best):
            return False
        nbrs = masks[v] & free
        while nbrs:
            low = nbrs & -nbrs
            w = low.bit_length() - 1
            nbrs ^= low
            path.append(w)
            if dfs(w, free & ~low):
                return True
            path.pop()
        return False

    full = (1 << g.n) - 1
    for s in range(g.n):
        path[:] = [s]
        if dfs(s, full & ~(1 << s)):
            break
    return best
