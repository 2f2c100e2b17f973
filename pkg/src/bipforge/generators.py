"""Deterministic constructors for grids, walls, standard families and subdivisions.

Numbering conventions:

* ``grid(j, k)`` has ``k`` horizontal paths of ``j`` vertices. Vertex ``(a, b)``
  with ``a in [j]``, ``b in [k]`` gets id ``(b - 1) * j + (a - 1)``.
* ``wall(2j, k)`` numbers path by path: ``v_l^(i)`` gets id ``(i - 1) * 2j + (l - 1)``.
  This coincides with the numbering of ``grid(2j, k)``, so the wall is
  literally a spanning subgraph of the grid.
* ``subdivide`` appends new vertices after the existing ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError
from .graph import Edge, Graph, norm_edge

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator, bit-exact.

    ``state += 0x9E3779B97F4A7C15``; ``z = state``;
    ``z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9``;
    ``z = (z ^ (z >> 27)) * 0x94D049BB133111EB``; output ``z ^ (z >> 31)``,
    all arithmetic modulo 2**64.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Integer in ``[0, bound)`` as ``next_u64() % bound``."""
        if bound <= 0:
            raise DomainError("bound must be positive")
        return self.next_u64() % bound

    def randint(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]`` inclusive."""
        return lo + self.below(hi - lo + 1)

    def bernoulli(self, p: Fraction) -> bool:
        """True iff ``next_u64() * den < num * 2**64`` for ``p = num/den``."""
        return self.next_u64() * p.denominator < p.numerator << 64

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]


def grid(j: int, k: int) -> Graph:
    if j < 1 or k < 1:
        raise DomainError("grid dimensions must be positive")
    edges = []
    for b in range(k):
        for a in range(j):
            v = b * j + a
            if a + 1 < j:
                edges.append((v, v + 1))
            if b + 1 < k:
                edges.append((v, v + j))
    return Graph(j * k, edges)


@dataclass(frozen=True)
class WallCoords:
    """Wall coordinates ``(l, i)`` (1-based position on horizontal path ``i``) to vertex ids."""

    rows: int  # 2j, the number of vertices on each horizontal path
    cols: int  # k, the number of horizontal paths
    coords: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coords", dict(self.coords))

    __hash__ = None  # type: ignore[assignment]

    def vertex(self, l: int, i: int) -> int:
        return self.coords[(l, i)]

    def inverse(self) -> dict[int, tuple[int, int]]:
        return {v: key for key, v in self.coords.items()}

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "coords": [[l, i, v] for (l, i), v in sorted(self.coords.items(), key=lambda t: (t[0][1], t[0][0]))],
        }

    @classmethod
    def from_json(cls, obj) -> "WallCoords":
        try:
            return cls(int(obj["rows"]), int(obj["cols"]), {(int(l), int(i)): int(v) for l, i, v in obj["coords"]})
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed wall coordinates: {exc}") from None


def wall_vertical_edges(two_j: int, k: int) -> list[tuple[int, int, int]]:
    """Vertical edges of the wall as ``(i, l, p)``: the edge joins ``v_p^(i-1)`` and ``v_p^(i)``.

    ``l`` runs over ``[j]`` and ``p`` is ``2l`` for even ``i`` and ``2l - 1`` for odd ``i``.
    """
    j = two_j // 2
    out = []
    for i in range(2, k + 1):
        for l in range(1, j + 1):
            out.append((i, l, 2 * l if i % 2 == 0 else 2 * l - 1))
    return out


def wall(two_j: int, k: int) -> tuple[Graph, WallCoords]:
    if two_j < 2 or two_j % 2:
        raise DomainError(f"wall width must be a positive even integer, got {two_j}")
    if k < 1:
        raise DomainError("wall needs at least one horizontal path")
    coords = {(l, i): (i - 1) * two_j + (l - 1) for i in range(1, k + 1) for l in range(1, two_j + 1)}
    edges = []
    for i in range(1, k + 1):
        for l in range(1, two_j):
            edges.append((coords[(l, i)], coords[(l + 1, i)]))
    for i, _, p in wall_vertical_edges(two_j, k):
        edges.append((coords[(p, i - 1)], coords[(p, i)]))
    return Graph(two_j * k, edges), WallCoords(two_j, k, coords)


def complete(n: int) -> Graph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise DomainError("complete bipartite graph needs positive part sizes")
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def path(n: int) -> Graph:
    if n < 1:
        raise DomainError("path needs n >= 1")
    return Graph(n, [(v, v + 1) for v in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("a simple cycle needs n >= 3")
    return Graph(n, [(v, v + 1) for v in range(n - 1)] + [(0, n - 1)])


def edgeless(n: int) -> Graph:
    return Graph(n)


def binary_tree(h: int) -> Graph:
    """Complete binary tree with ``h`` levels (``2**h - 1`` vertices), root 0, children ``2v+1, 2v+2``."""
    if h < 1:
        raise DomainError("binary tree height must be >= 1")
    n = 2**h - 1
    return Graph(n, [((v - 1) // 2, v) for v in range(1, n)])


FAMILIES = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "path": path,
    "cycle": cycle,
    "binary_tree": binary_tree,
    "edgeless": edgeless,
    "grid": grid,
    "wall": lambda two_j, k: wall(two_j, k)[0],
}


def family(kind: str, *sizes: int) -> Graph:
    try:
        ctor = FAMILIES[kind]
    except KeyError:
        raise DomainError(f"unknown family {kind!r}") from None
    return ctor(*sizes)


def subdivide(g: Graph, lengths: Mapping[Edge, int]) -> tuple[Graph, dict[Edge, list[int]]]:
    """Replace edge ``uv`` by a path with ``lengths[uv]`` edges (default 1).

    Returns the new graph and, per original edge ``(u, v)`` with ``u < v``, the
    replacing path from ``u`` to ``v``. New vertices are numbered from ``g.n``
    upward in sorted edge order.
    """
    norm = {}
    for e, ell in lengths.items():
        key = norm_edge(*e)
        if not g.has_edge(*key):
            raise DomainError(f"{key} is not an edge of the graph")
        if int(ell) < 1:
            raise DomainError(f"subdivision length must be positive, got {ell} for edge {key}")
        norm[key] = int(ell)
    nxt = g.n
    edges = []
    paths: dict[Edge, list[int]] = {}
    for u, v in g.edges:
        ell = norm.get((u, v), 1)
        inner = list(range(nxt, nxt + ell - 1))
        nxt += ell - 1
        p = [u, *inner, v]
        paths[(u, v)] = p
        edges.extend(zip(p, p[1:]))
    return Graph(nxt, edges), paths


def random_graph(n: int, p, seed: int) -> Graph:
    """G(n, p) driven by SplitMix64: pairs ``(u, v)``, ``u < v``, in lexicographic order, one draw each."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise DomainError(f"edge probability {p} outside [0, 1]")
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.bernoulli(p)]
    return Graph(n, edges)


def random_lengths(g: Graph, max_len: int, seed: int) -> dict[Edge, int]:
    """Subdivision lengths in ``[1, max_len]``, one draw per edge in sorted order."""
    if max_len < 1:
        raise DomainError("max_len must be >= 1")
    rng = SplitMix64(seed)
    return {e: rng.randint(1, max_len) for e in g.edges}
