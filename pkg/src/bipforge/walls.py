"""Bipartite wall subdivisions inside subdivided walls.

Given a subdivision of the ``(k * 2**(k+1)) x k`` wall, rows are added one at a
time. At row ``s`` the vertical paths still alive are offered to
:func:`select_paths` as paths joining the bipartite part built so far to the
new horizontal path, and only the kept ones survive. At least ``k`` columns
survive all ``k - 1`` halvings; trimming the rows around the first ``k`` of
them leaves a subdivision of the ``2k x k`` wall.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .errors import DomainError, ValidationError
from .generators import WallCoords, wall, wall_vertical_edges
from .graph import Edge, Graph, SubgraphRef, TwoColouring, assemble, is_path_in, norm_edge, two_colour
from .switching import PathSystem, select_paths


def required_width(k: int) -> int:
    return k * 2 ** (k + 1)


@dataclass(frozen=True)
class SubdividedWall:
    """A labelled subdivision of the ``width x k`` wall.

    ``marks[i - 1][l - 1]`` is the image of ``v_l^(i)`` on horizontal path ``i``;
    ``vertical_paths[(i, l)]`` runs from the image of ``v_p^(i-1)`` to that of
    ``v_p^(i)`` with ``p = 2l`` for even ``i`` and ``p = 2l - 1`` for odd ``i``.
    """

    host: Graph
    k: int
    width: int
    horizontal_paths: tuple[tuple[int, ...], ...]
    marks: tuple[tuple[int, ...], ...]
    vertical_paths: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    def position(self, i: int, l: int) -> int:
        """Index of the image of ``v_l^(i)`` along horizontal path ``i``."""
        return self._positions()[i - 1][l - 1]

    def _positions(self) -> list[list[int]]:
        cached = self.__dict__.get("_pos")
        if cached is None:
            cached = []
            for row, marks in zip(self.horizontal_paths, self.marks):
                where = {v: idx for idx, v in enumerate(row)}
                cached.append([where[v] for v in marks])
            object.__setattr__(self, "_pos", cached)
        return cached

    def validate(self) -> None:
        if self.k < 1 or self.width < 2 or self.width % 2:
            raise ValidationError(f"bad wall shape {self.width} x {self.k}")
        if len(self.horizontal_paths) != self.k or len(self.marks) != self.k:
            raise ValidationError("need one horizontal path and one mark list per row")
        on_rows: dict[int, int] = {}
        for i, (row, marks) in enumerate(zip(self.horizontal_paths, self.marks), start=1):
            if not is_path_in(self.host, row):
                raise ValidationError(f"horizontal path {i} is not a simple host path")
            for v in row:
                if v in on_rows:
                    raise ValidationError(f"horizontal paths {on_rows[v]} and {i} share vertex {v}")
                on_rows[v] = i
            if len(marks) != self.width:
                raise ValidationError(f"row {i} has {len(marks)} marks, expected {self.width}")
            where = {v: idx for idx, v in enumerate(row)}
            if any(v not in where for v in marks):
                raise ValidationError(f"row {i} has a mark off its horizontal path")
            pos = [where[v] for v in marks]
            if pos[0] != 0 or pos[-1] != len(row) - 1 or any(a >= b for a, b in zip(pos, pos[1:])):
                raise ValidationError(f"row {i} marks are not in order from end to end")
        expected = {(i, l) for i, l, _ in wall_vertical_edges(self.width, self.k)}
        if set(self.vertical_paths) != expected:
            raise ValidationError("vertical paths do not match the wall's vertical edges")
        interior: dict[int, tuple[int, int]] = {}
        for i, l, p in wall_vertical_edges(self.width, self.k):
            s = self.vertical_paths[(i, l)]
            if not is_path_in(self.host, s) or len(s) < 2:
                raise ValidationError(f"vertical path ({i}, {l}) is not a simple host path")
            if s[0] != self.marks[i - 2][p - 1] or s[-1] != self.marks[i - 1][p - 1]:
                raise ValidationError(f"vertical path ({i}, {l}) has wrong endpoints")
            for v in s[1:-1]:
                if v in on_rows or v in interior:
                    raise ValidationError(f"vertical path ({i}, {l}) interior vertex {v} is already used")
                interior[v] = (i, l)


def import_wall_subdivision(host: Graph, coords: WallCoords, record: Mapping[Edge, Sequence[int]]) -> SubdividedWall:
    """Label a subdivided wall from the path record returned by ``subdivide``."""
    base, _ = wall(coords.rows, coords.cols)
    rec = {}
    for e, p in record.items():
        key = norm_edge(*e)
        if not base.has_edge(*key):
            raise ValidationError(f"record edge {key} is not a wall edge")
        rec[key] = tuple(p)
    for e in base.edges:
        if e not in rec:
            raise ValidationError(f"record is missing wall edge {e}")

    def oriented(a: int, b: int) -> tuple[int, ...]:
        p = rec[norm_edge(a, b)]
        if p[0] == a and p[-1] == b:
            return p
        if p[0] == b and p[-1] == a:
            return p[::-1]
        raise ValidationError(f"record path for ({a}, {b}) has wrong endpoints")

    try:
        rows, marks = [], []
        for i in range(1, coords.cols + 1):
            ids = [coords.vertex(l, i) for l in range(1, coords.rows + 1)]
            row = [ids[0]]
            for a, b in zip(ids, ids[1:]):
                row.extend(oriented(a, b)[1:])
            rows.append(tuple(row))
            marks.append(tuple(ids))
        vertical = {}
        for i, l, p in wall_vertical_edges(coords.rows, coords.cols):
            vertical[(i, l)] = oriented(coords.vertex(p, i - 1), coords.vertex(p, i))
    except KeyError as exc:
        raise ValidationError(f"wall coordinates missing {exc}") from None
    w = SubdividedWall(host, coords.cols, coords.rows, tuple(rows), tuple(marks), vertical)
    w.validate()
    return w


@dataclass(frozen=True)
class WallExtraction:
    subgraph: SubgraphRef
    colouring: TwoColouring
    index_sets: tuple[tuple[int, ...], ...]  # A_1, ..., A_k
    columns: tuple[int, ...]  # l_1 < ... < l_k
    coords: WallCoords  # the 2k x k wall inside the subgraph, by construction

    def to_json(self) -> dict:
        return {
            "A_sizes": [len(a) for a in self.index_sets],
            "columns": list(self.columns),
            "vertices": sorted(self.subgraph.vertices),
            "edges": [list(e) for e in sorted(self.subgraph.edges)],
            "coords": self.coords.to_json(),
        }


def _trim(w: SubdividedWall, i: int, first: int, last: int) -> tuple[int, ...]:
    """Subpath of horizontal path ``i`` between the images of ``v_first`` and ``v_last``."""
    return w.horizontal_paths[i - 1][w.position(i, first) : w.position(i, last) + 1]


def extract_bipartite_wall(w: SubdividedWall) -> WallExtraction:
    w.validate()
    k = w.k
    need = required_width(k)
    if w.width < need:
        raise DomainError(f"wall width {w.width} is too small for k={k}; need at least {need}")
    host = w.host
    rows = [SubgraphRef.from_path(p) for p in w.horizontal_paths]
    verticals = {key: SubgraphRef.from_path(p) for key, p in w.vertical_paths.items()}
    alive = list(range(1, k * 2**k + 1))
    index_sets = [tuple(alive)]
    colouring = two_colour(rows[0])
    for s in range(2, k + 1):
        below = [rows[i - 1] for i in range(1, s)]
        below += [verticals[(i, l)] for i in range(2, s) for l in alive]
        system = PathSystem(host, (assemble(host, below), rows[s - 1]), tuple(w.vertical_paths[(s, l)] for l in alive))
        result = select_paths(system)
        alive = [alive[idx] for idx in result.selected]
        if len(alive) < k * 2 ** (k - s):
            raise RuntimeError(f"only {len(alive)} columns survive row {s}")
        index_sets.append(tuple(alive))
        colouring = result.colouring
    assert isinstance(colouring, TwoColouring)

    cols = tuple(alive[:k])
    first, last = 2 * cols[0] - 1, 2 * cols[-1]
    parts = [SubgraphRef.from_path(_trim(w, i, first, last)) for i in range(1, k + 1)]
    parts += [verticals[(i, l)] for i in range(2, k + 1) for l in cols]
    g_hat = assemble(host, parts)
    out_coords = {}
    for i in range(1, k + 1):
        for m, l in enumerate(cols, start=1):
            out_coords[(2 * m - 1, i)] = w.marks[i - 1][2 * l - 2]
            out_coords[(2 * m, i)] = w.marks[i - 1][2 * l - 1]
    restricted = TwoColouring({v: c for v, c in colouring.colour.items() if v in g_hat.vertices})
    return WallExtraction(g_hat, restricted, tuple(index_sets), cols, WallCoords(2 * k, k, out_coords))


# --- structural verification -------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    reason: str


def _chains(adj: Mapping[int, Sequence[int]]) -> tuple[list[int], list[tuple[int, ...]]]:
    """Branch vertices (degree not 2) and the maximal paths between them."""
    branch = sorted(v for v, nb in adj.items() if len(nb) != 2)
    bset = set(branch)
    seen_edges: set[Edge] = set()
    chains = []
    for b in branch:
        for nxt in adj[b]:
            if norm_edge(b, nxt) in seen_edges:
                continue
            chain = [b, nxt]
            seen_edges.add(norm_edge(b, nxt))
            while chain[-1] not in bset:
                here, prev = chain[-1], chain[-2]
                step = adj[here][0] if adj[here][0] != prev else adj[here][1]
                seen_edges.add(norm_edge(here, step))
                chain.append(step)
            chains.append(tuple(chain))
    return branch, chains


def _reduced(adj: Mapping[int, Sequence[int]]) -> tuple[nx.Graph, dict[tuple[int, int], list[tuple[int, ...]]], int]:
    branch, chains = _chains(adj)
    red = nx.Graph()
    for b in branch:
        red.add_node(b, degree=len(adj[b]))
    bundles: dict[tuple[int, int], list[tuple[int, ...]]] = defaultdict(list)
    for c in chains:
        bundles[norm_edge(c[0], c[-1])].append(c)
    for (a, b), group in bundles.items():
        group.sort(key=len)
        red.add_edge(a, b, lengths=[len(c) - 1 for c in group])
    covered = sum(len(c) - 1 for c in chains)
    return red, bundles, covered


def verify_wall_subdivision(g: SubgraphRef | Graph, k: int, rows: int) -> WallCoords | Mismatch:
    """Wall coordinates showing ``g`` is a subdivision of ``wall(rows, k)``, or the first failed check."""
    if isinstance(g, Graph):
        g = SubgraphRef.whole(g)
    try:
        target, tcoords = wall(rows, k)
    except DomainError as exc:
        return Mismatch(f"bad target wall: {exc}")
    adj = g.adjacency()
    tadj = {v: list(target.neighbours(v)) for v in range(target.n)}
    if not adj:
        return Mismatch("empty subgraph")
    if max(len(nb) for nb in adj.values()) > 3:
        return Mismatch("a vertex has degree above 3")
    for d in (0, 1, 3):
        have = sum(len(nb) == d for nb in adj.values())
        want = sum(len(nb) == d for nb in tadj.values())
        if have != want:
            return Mismatch(f"{have} vertices of degree {d}, wall has {want}")
    from .graph import is_connected

    if not is_connected(g):
        return Mismatch("subgraph is disconnected")
    red_g, bundles_g, covered = _reduced(adj)
    if covered != len(g.edges):
        return Mismatch("some edges lie on cycles without branch vertices")
    red_w, bundles_w, _ = _reduced(tadj)

    def edge_ok(we, ge):
        a, b = we["lengths"], ge["lengths"]
        return len(a) == len(b) and all(x <= y for x, y in zip(a, b))

    matcher = GraphMatcher(red_w, red_g, node_match=lambda a, b: a["degree"] == b["degree"], edge_match=edge_ok)
    phi = next(matcher.isomorphisms_iter(), None)
    if phi is None:
        return Mismatch("branch structure does not match the wall")

    image: dict[int, int] = dict(phi)
    for (a, b), wchains in bundles_w.items():
        gchains = bundles_g[norm_edge(phi[a], phi[b])]
        for wc, gc in zip(wchains, gchains):
            if gc[0] != phi[wc[0]]:
                gc = gc[::-1]
            for offset, wv in enumerate(wc[1:-1], start=1):
                image[wv] = gc[offset]
    coords = {key: image[v] for key, v in tcoords.coords.items()}
    return WallCoords(rows, k, coords)
