"""Selecting half of a system of joining paths so that the union stays bipartite.

Pieces ``H_1..H_t`` are processed in order. At step ``j`` the piece is coloured
canonically, every path whose later endpoint piece is ``H_j`` is classified
against the colours fixed so far, and ``H_j`` is switched when disagreeable
paths strictly outnumber agreeable ones. The agreeable paths are kept, so
each step keeps at least half of its new paths.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ValidationError
from .generators import SplitMix64
from .graph import (
    Colour,
    Graph,
    SubgraphRef,
    TwoColouring,
    assemble,
    is_path_in,
    norm_edge,
    switch,
    two_colour,
)


class PathClass(enum.Enum):
    AGREEABLE = "agreeable"
    DISAGREEABLE = "disagreeable"


def _agreeable(n_edges: int, a: Colour, b: Colour) -> bool:
    return (a == b) == (n_edges % 2 == 0)


def classify_path(path: Sequence[int], c: TwoColouring) -> PathClass:
    """Agreeable iff the endpoint colours extend to a proper colouring of the path."""
    for end in (path[0], path[-1]):
        if end not in c:
            raise DomainError(f"path endpoint {end} is not coloured")
    if _agreeable(len(path) - 1, c[path[0]], c[path[-1]]):
        return PathClass.AGREEABLE
    return PathClass.DISAGREEABLE


@dataclass(frozen=True)
class PathSystem:
    host: Graph
    pieces: tuple[SubgraphRef, ...]
    paths: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))

    def validate(self) -> list[tuple[int, int]]:
        """Check every invariant; return the ``(first, last)`` piece index of each path."""
        owner: dict[int, int] = {}
        for j, piece in enumerate(self.pieces):
            try:
                piece.check_against(self.host)
            except DomainError as exc:
                raise ValidationError(f"piece {j}: {exc}") from None
            for v in piece.vertices:
                if v in owner:
                    raise ValidationError(f"pieces {owner[v]} and {j} share vertex {v}")
                owner[v] = j
            if not isinstance(two_colour(piece), TwoColouring):
                raise ValidationError(f"piece {j} is not bipartite")
        ends = []
        interior_owner: dict[int, int] = {}
        for i, p in enumerate(self.paths):
            if len(p) < 2:
                raise ValidationError(f"path {i} has fewer than two vertices")
            if not is_path_in(self.host, p):
                raise ValidationError(f"path {i} is not a simple path of the host")
            a, b = owner.get(p[0]), owner.get(p[-1])
            if a is None or b is None:
                raise ValidationError(f"path {i} does not start and end in pieces")
            if a == b:
                raise ValidationError(f"path {i} starts and ends in the same piece {a}")
            for v in p[1:-1]:
                if v in owner:
                    raise ValidationError(f"path {i} interior vertex {v} lies in piece {owner[v]}")
                if v in interior_owner:
                    raise ValidationError(f"paths {interior_owner[v]} and {i} share interior vertex {v}")
                interior_owner[v] = i
            ends.append((a, b))
        return ends

    @classmethod
    def from_json(cls, host: Graph, obj) -> "PathSystem":
        """Descriptor ``{"pieces": [...], "paths": [[v1, ..., vn], ...]}``.

        A piece is a vertex list (taken as an induced subgraph) or an object
        ``{"vertices": [...], "edges": [[u, v], ...]}``.
        """
        if not isinstance(obj, dict) or "pieces" not in obj or "paths" not in obj:
            raise ValidationError("path system needs 'pieces' and 'paths'")
        pieces = []
        for j, spec in enumerate(obj["pieces"]):
            if isinstance(spec, dict):
                try:
                    pieces.append(SubgraphRef(frozenset(spec["vertices"]), frozenset(map(tuple, spec.get("edges", [])))))
                except (KeyError, DomainError) as exc:
                    raise ValidationError(f"piece {j}: {exc}") from None
            else:
                if any(not 0 <= v < host.n for v in spec):
                    raise ValidationError(f"piece {j} has a vertex outside the host")
                pieces.append(SubgraphRef.induced(host, spec))
        return cls(host, tuple(pieces), tuple(tuple(p) for p in obj["paths"]))


@dataclass(frozen=True)
class StepRecord:
    piece: int
    new_paths: int  # |A^(j)|
    kept: int  # |B^(j)|
    switched: bool
    paths_so_far: int  # |P^(j)|
    selected_so_far: int  # |Q^(j)|


@dataclass(frozen=True)
class SwitchResult:
    selected: tuple[int, ...]
    colouring: TwoColouring
    subgraph: SubgraphRef
    switch_log: tuple[bool, ...]
    steps: tuple[StepRecord, ...]

    def to_json(self) -> dict:
        return {
            "selected": list(self.selected),
            "colouring": self.colouring.to_json(),
            "subgraph": {
                "vertices": sorted(self.subgraph.vertices),
                "edges": [list(e) for e in sorted(self.subgraph.edges)],
            },
            "switch_log": list(self.switch_log),
            "steps": [vars(s) for s in self.steps],
        }


def select_paths(sys: PathSystem) -> SwitchResult:
    ends = sys.validate()
    t = len(sys.pieces)
    arriving: list[list[int]] = [[] for _ in range(t)]
    for i, (a, b) in enumerate(ends):
        arriving[max(a, b)].append(i)

    colour: dict[int, Colour] = {}
    selected: list[int] = []
    switch_log: list[bool] = []
    steps: list[StepRecord] = []
    seen_paths = 0
    for j, piece in enumerate(sys.pieces):
        piece_colouring = two_colour(piece)
        assert isinstance(piece_colouring, TwoColouring)
        local = piece_colouring.colour
        agree, disagree = [], []
        for i in arriving[j]:
            p = sys.paths[i]
            first = colour[p[0]] if p[0] in colour else local[p[0]]
            last = colour[p[-1]] if p[-1] in colour else local[p[-1]]
            (agree if _agreeable(len(p) - 1, first, last) else disagree).append(i)
        switched = len(disagree) > len(agree)
        if switched:
            piece_colouring = switch(piece_colouring, piece.vertices)
            agree = disagree
        colour.update(piece_colouring.colour)
        for i in agree:
            p = sys.paths[i]
            c = colour[p[0]]
            for v in p[1:-1]:
                c = c.flipped()
                colour[v] = c
        selected.extend(agree)
        switch_log.append(switched)
        seen_paths += len(arriving[j])
        steps.append(StepRecord(j, len(arriving[j]), len(agree), switched, seen_paths, len(selected)))

    parts = list(sys.pieces) + [SubgraphRef.from_path(sys.paths[i]) for i in selected]
    subgraph = assemble(sys.host, parts) if parts else SubgraphRef()
    return SwitchResult(tuple(sorted(selected)), TwoColouring(colour), subgraph, tuple(switch_log), tuple(steps))


def bfs_vertex_order(g: Graph) -> list[int]:
    """Vertices component by component, each in BFS order from its smallest vertex."""
    seen = [False] * g.n
    order = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.neighbours(u):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def half_cut(g: Graph) -> SwitchResult:
    """Bipartite subgraph keeping at least half of the edges.

    Vertices become singleton pieces in BFS order and edges become paths, so
    ``selected`` indexes ``g.edges``. BFS order means every vertex after the
    first of its component meets an already coloured neighbour, which makes
    bipartite graphs come out whole.
    """
    pieces = tuple(SubgraphRef(frozenset([v])) for v in bfs_vertex_order(g))
    return select_paths(PathSystem(g, pieces, tuple(g.edges)))


def kept_edges(g: Graph, result: SwitchResult) -> list[tuple[int, int]]:
    return [norm_edge(*g.edges[i]) for i in result.selected]


def random_path_system(seed: int, max_pieces: int = 5, max_paths: int = 40, max_len: int = 4) -> PathSystem:
    """A valid random system: tree pieces of 1 to 4 vertices and fresh path interiors.

    Draw order: ``t``, then per piece its size and parent choices, then the path
    count, then per path its two pieces, endpoints and length.
    """
    rng = SplitMix64(seed)
    t = rng.randint(2, max_pieces)
    nxt = 0
    pieces = []
    edges: set = set()
    for _ in range(t):
        size = rng.randint(1, 4)
        vs = list(range(nxt, nxt + size))
        nxt += size
        tree = {norm_edge(vs[i], vs[rng.below(i)]) for i in range(1, size)}
        edges |= tree
        pieces.append(SubgraphRef(frozenset(vs), frozenset(tree)))
    paths = []
    for _ in range(rng.randint(0, max_paths)):
        a = rng.below(t)
        b = rng.below(t - 1)
        b += b >= a
        u = rng.choice(sorted(pieces[a].vertices))
        v = rng.choice(sorted(pieces[b].vertices))
        length = rng.randint(1, max_len)
        if length == 1 and norm_edge(u, v) in edges:
            length = 2
        p = [u, *range(nxt, nxt + length - 1), v]
        nxt += length - 1
        edges.update(norm_edge(x, y) for x, y in zip(p, p[1:]))
        paths.append(tuple(p))
    return PathSystem(Graph(nxt, edges), tuple(pieces), tuple(paths))
