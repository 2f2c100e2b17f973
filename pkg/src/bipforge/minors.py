"""Bipartite subgraphs that keep a large minor, topological minor or shallow minor.

A minor model is pruned to disjoint trees joined by one realizing edge per
pattern edge. The trees become pieces and the realizers become single-edge
paths for :func:`select_paths`; contracting the trees of the result gives a
pattern with every vertex and at least half of the edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import CapExceeded, DomainError, ValidationError
from .graph import Edge, Graph, SubgraphRef, centre, is_connected, is_path_in, norm_edge
from .io import graph_from_json, graph_to_json
from .switching import PathSystem, SwitchResult, select_paths


@dataclass(frozen=True)
class MinorModel:
    """Branch set ``i`` models pattern vertex ``i``; ``realizers[(i, j)] = (u, v)`` with ``i < j``, ``u`` in set ``i``."""

    host: Graph
    pattern: Graph
    branch_sets: tuple[SubgraphRef, ...]
    realizers: Mapping[Edge, Edge] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "branch_sets", tuple(self.branch_sets))
        object.__setattr__(self, "realizers", dict(self.realizers))

    __hash__ = None  # type: ignore[assignment]

    def validate(self) -> None:
        if len(self.branch_sets) != self.pattern.n:
            raise ValidationError(f"{len(self.branch_sets)} branch sets for {self.pattern.n} pattern vertices")
        owner: dict[int, int] = {}
        for i, b in enumerate(self.branch_sets):
            try:
                b.check_against(self.host)
            except DomainError as exc:
                raise ValidationError(f"branch set {i}: {exc}") from None
            if not b.vertices:
                raise ValidationError(f"branch set {i} is empty")
            if not is_connected(b):
                raise ValidationError(f"branch set {i} is disconnected")
            for v in b.vertices:
                if v in owner:
                    raise ValidationError(f"branch sets {owner[v]} and {i} share vertex {v}")
                owner[v] = i
        for i, j in self.pattern.edges:
            if (i, j) not in self.realizers:
                raise ValidationError(f"pattern edge ({i}, {j}) has no realizer")
        for (i, j), (u, v) in self.realizers.items():
            if not self.pattern.has_edge(i, j) or i > j:
                raise ValidationError(f"realizer for ({i}, {j}) which is not a pattern edge")
            if not (0 <= u < self.host.n and 0 <= v < self.host.n and self.host.has_edge(u, v)):
                raise ValidationError(f"realizer ({u}, {v}) of ({i}, {j}) is not a host edge")
            if owner.get(u) != i or owner.get(v) != j:
                raise ValidationError(f"realizer ({u}, {v}) does not join branch sets {i} and {j}")

    def is_pruned(self) -> bool:
        return all(len(b.edges) == len(b.vertices) - 1 and is_connected(b) for b in self.branch_sets)

    def terminals(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in self.branch_sets]
        for (i, j), (u, v) in self.realizers.items():
            out[i].add(u)
            out[j].add(v)
        return out

    def to_json(self) -> dict:
        return {
            "pattern": graph_to_json(self.pattern),
            "branch_sets": [sorted(b.vertices) for b in self.branch_sets],
            "branch_edges": [[list(e) for e in sorted(b.edges)] for b in self.branch_sets],
            "realizers": [[i, j, u, v] for (i, j), (u, v) in sorted(self.realizers.items())],
        }

    @classmethod
    def from_json(cls, host: Graph, obj) -> "MinorModel":
        """``{"pattern": graph, "branch_sets": [[v, ...], ...], "realizers": [[i, j, u, v], ...]}``.

        Branch sets are induced unless ``branch_edges`` is given. When several
        realizers are listed for one pattern edge the lexicographically smallest
        is kept.
        """
        try:
            pattern = graph_from_json(obj["pattern"])
            sets = obj["branch_sets"]
            branch_edges = obj.get("branch_edges")
            raw = obj.get("realizers", [])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed minor model: {exc}") from None
        branch = []
        for idx, vs in enumerate(sets):
            if any(not 0 <= v < host.n for v in vs):
                raise ValidationError(f"branch set {idx} has a vertex outside the host")
            if branch_edges is not None:
                branch.append(SubgraphRef(frozenset(vs), frozenset(tuple(e) for e in branch_edges[idx])))
            else:
                branch.append(SubgraphRef.induced(host, vs))
        realizers: dict[Edge, Edge] = {}
        for i, j, u, v in raw:
            if i > j:
                i, j, u, v = j, i, v, u
            if (i, j) not in realizers or (u, v) < realizers[(i, j)]:
                realizers[(i, j)] = (u, v)
        return cls(host, pattern, tuple(branch), realizers)


def smallest_realizers(host: Graph, pattern: Graph, sets: Sequence[SubgraphRef]) -> dict[Edge, Edge]:
    owner = {v: i for i, b in enumerate(sets) for v in b.vertices}
    found: dict[Edge, Edge] = {}
    for u, v in host.edges:
        a, b = owner.get(u), owner.get(v)
        if a is None or b is None or a == b:
            continue
        if a > b:
            a, b, u, v = b, a, v, u
        if pattern.has_edge(a, b) and ((a, b) not in found or (u, v) < found[(a, b)]):
            found[(a, b)] = (u, v)
    return found


def model_from_branch_sets(host: Graph, pattern: Graph, vertex_sets: Sequence[Sequence[int]]) -> MinorModel:
    """Model with induced branch sets and lexicographically smallest realizers."""
    sets = tuple(SubgraphRef.induced(host, vs) for vs in vertex_sets)
    m = MinorModel(host, pattern, sets, smallest_realizers(host, pattern, sets))
    m.validate()
    return m


def _steiner_subtree(branch: SubgraphRef, root: int, terminals: set[int]) -> SubgraphRef:
    adj = branch.adjacency()
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if not terminals:
        return SubgraphRef(frozenset([root]))
    tree: dict[int, set[int]] = {v: set() for v in parent}
    for v, p in parent.items():
        if p is not None:
            tree[v].add(p)
            tree[p].add(v)
    leaves = deque(sorted(v for v in tree if len(tree[v]) <= 1 and v not in terminals))
    while leaves and len(tree) > 1:
        v = leaves.popleft()
        if v not in tree or len(tree[v]) > 1:
            continue
        for w in tree.pop(v):
            tree[w].discard(v)
            if len(tree[w]) <= 1 and w not in terminals:
                leaves.append(w)
    edges = {norm_edge(v, w) for v, ws in tree.items() for w in ws}
    return SubgraphRef(frozenset(tree), frozenset(edges))


def prune_model(m: MinorModel, root_at_centre: bool = False) -> MinorModel:
    """Shrink every branch set to the subtree of a BFS spanning tree that connects its realizer ends.

    The BFS tree is rooted at the smallest attachment point, or at the centre
    of the branch set when ``root_at_centre`` is set (which keeps the radius
    bound of shallow models).
    """
    m.validate()
    pruned = []
    for b, terms in zip(m.branch_sets, m.terminals()):
        if root_at_centre:
            root = centre(b, min(b.vertices))[0]
        else:
            root = min(terms) if terms else min(b.vertices)
        pruned.append(_steiner_subtree(b, root, terms))
    out = MinorModel(m.host, m.pattern, tuple(pruned), m.realizers)
    out.validate()
    return out


def contract(subgraph: SubgraphRef, branch_sets: Sequence[SubgraphRef]) -> Graph:
    """Contract each branch set's edges inside ``subgraph`` and keep edges between sets.

    Vertices outside every branch set are deleted.
    """
    parent: dict[int, int] = {v: v for v in subgraph.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    label: dict[int, int] = {}
    for i, b in enumerate(branch_sets):
        for v in b.vertices:
            label[v] = i
    for u, v in subgraph.edges:
        if u in label and label.get(u) == label.get(v):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    blob_label: dict[int, int] = {}
    for v in subgraph.vertices:
        if v in label:
            r = find(v)
            if blob_label.setdefault(r, label[v]) != label[v]:
                raise DomainError("a contracted piece spans two branch sets")
    for i, b in enumerate(branch_sets):
        roots = {find(v) for v in b.vertices if v in parent}
        if len(roots) != 1:
            raise DomainError(f"branch set {i} is not connected inside the subgraph")
    edges = set()
    for u, v in subgraph.edges:
        if u in label and v in label and label[u] != label[v]:
            edges.add(norm_edge(label[u], label[v]))
    return Graph(len(branch_sets), edges)


def bipartize_minor(m: MinorModel) -> tuple[SwitchResult, Graph]:
    """Bipartite subgraph of the host containing a minor with all pattern vertices and half the edges."""
    m.validate()
    if not m.is_pruned():
        raise ValidationError("minor model must be pruned to trees first")
    edges = m.pattern.edges
    paths = tuple(m.realizers[e] for e in edges)
    result = select_paths(PathSystem(m.host, m.branch_sets, paths))
    return result, Graph(m.pattern.n, [edges[i] for i in result.selected])


@dataclass(frozen=True)
class TopologicalModel:
    """Branch vertex per pattern vertex and a host path ``x_i .. x_j`` per pattern edge ``(i, j)``, ``i < j``."""

    host: Graph
    pattern: Graph
    branch_vertices: tuple[int, ...]
    branch_paths: Mapping[Edge, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "branch_vertices", tuple(self.branch_vertices))
        object.__setattr__(self, "branch_paths", {k: tuple(p) for k, p in self.branch_paths.items()})

    __hash__ = None  # type: ignore[assignment]

    def validate(self) -> None:
        xs = self.branch_vertices
        if len(xs) != self.pattern.n:
            raise ValidationError(f"{len(xs)} branch vertices for {self.pattern.n} pattern vertices")
        if len(set(xs)) != len(xs):
            raise ValidationError("branch vertices are not distinct")
        if any(not 0 <= x < self.host.n for x in xs):
            raise ValidationError("branch vertex outside the host")
        if set(self.branch_paths) != set(self.pattern.edges):
            raise ValidationError("branch paths must be given for exactly the pattern edges")
        xset = set(xs)
        used: dict[int, Edge] = {}
        for (i, j), p in sorted(self.branch_paths.items()):
            if len(p) < 2 or p[0] != xs[i] or p[-1] != xs[j]:
                raise ValidationError(f"path for ({i}, {j}) must run from x_{i} to x_{j}")
            if not is_path_in(self.host, p):
                raise ValidationError(f"path for ({i}, {j}) is not a simple host path")
            for v in p[1:-1]:
                if v in xset:
                    raise ValidationError(f"path for ({i}, {j}) passes through branch vertex {v}")
                if v in used:
                    raise ValidationError(f"paths for {used[v]} and ({i}, {j}) share interior vertex {v}")
                used[v] = (i, j)

    def to_json(self) -> dict:
        return {
            "pattern": graph_to_json(self.pattern),
            "branch_vertices": list(self.branch_vertices),
            "branch_paths": [[i, j, list(p)] for (i, j), p in sorted(self.branch_paths.items())],
        }


def bipartize_topological(m: TopologicalModel) -> tuple[SwitchResult, Graph]:
    """Bipartite subgraph that is a subdivision of a pattern keeping half the edges."""
    m.validate()
    edges = m.pattern.edges
    pieces = tuple(SubgraphRef(frozenset([x])) for x in m.branch_vertices)
    result = select_paths(PathSystem(m.host, pieces, tuple(m.branch_paths[e] for e in edges)))
    return result, Graph(m.pattern.n, [edges[i] for i in result.selected])


@dataclass(frozen=True)
class ShallowModel:
    model: MinorModel
    r: int

    def validate(self) -> None:
        self.model.validate()
        if self.r < 0:
            raise ValidationError("radius bound must be nonnegative")
        for i, b in enumerate(self.model.branch_sets):
            c, rad = centre(b, min(b.vertices))
            if rad > self.r:
                raise ValidationError(f"branch set {i} has radius {rad} > {self.r}")


@dataclass(frozen=True)
class RadiusCertificate:
    branch: int
    centre: int
    radius: int


def prune_shallow(m: ShallowModel) -> ShallowModel:
    m.validate()
    out = ShallowModel(prune_model(m.model, root_at_centre=True), m.r)
    out.validate()
    return out


def bipartize_shallow(m: ShallowModel) -> tuple[SwitchResult, Graph, list[RadiusCertificate]]:
    m.validate()
    result, contracted = bipartize_minor(m.model)
    certs = []
    for i, b in enumerate(m.model.branch_sets):
        c, rad = centre(b, min(b.vertices))
        if rad > m.r:
            raise RuntimeError(f"branch tree {i} has radius {rad} > {m.r} after bipartization")
        certs.append(RadiusCertificate(i, c, rad))
    return result, contracted, certs


# --- exhaustive model search -------------------------------------------------


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def connected_subsets(masks: Sequence[int], within: int, max_size: int) -> list[int]:
    """All connected vertex subsets of ``within`` with at most ``max_size`` vertices."""
    out = []

    def grow(current: int, frontier: int, excluded: int, size: int):
        out.append(current)
        if size == max_size:
            return
        cand = frontier & ~excluded
        for v in _bits(cand):
            bit = 1 << v
            excluded |= bit
            grow(current | bit, (frontier | masks[v]) & within & ~current & ~bit, excluded, size + 1)

    for v in _bits(within):
        lower = within & ((1 << v) - 1)
        # v is the smallest vertex of every set grown from it
        grow(1 << v, masks[v] & within & ~lower, lower | (1 << v), 1)
    return out


def _component_masks(masks: Sequence[int], within: int) -> list[int]:
    comps = []
    rest = within
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def _twin_classes(pattern: Graph) -> list[int]:
    """Class id per vertex; members of a class are pairwise twins, so any permutation of a class is an automorphism."""

    def twins(a: int, b: int) -> bool:
        return set(pattern.neighbours(a)) - {b} == set(pattern.neighbours(b)) - {a}

    members: list[list[int]] = []
    cls = []
    for a in range(pattern.n):
        for idx, group in enumerate(members):
            if all(twins(a, b) for b in group):
                group.append(a)
                cls.append(idx)
                break
        else:
            members.append([a])
            cls.append(len(members) - 1)
    return cls


def _placement_order(pattern: Graph) -> list[int]:
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < pattern.n:
        v = max(
            (u for u in range(pattern.n) if u not in placed),
            key=lambda u: (sum(w in placed for w in pattern.neighbours(u)), pattern.degree(u), -u),
        )
        order.append(v)
        placed.add(v)
    return order


def find_minor_model(host: Graph, pattern: Graph, cap: int = 12) -> MinorModel | None:
    """A minor model of ``pattern`` in ``host``, or None; None is exhaustive.

    Branch sets are connected vertex sets chosen pattern vertex by pattern
    vertex, smallest sets first, so the first model found has small branch sets.
    """
    if host.n > cap:
        raise CapExceeded("minor search", host.n, cap)
    if pattern.n == 0:
        return MinorModel(host, pattern, (), {})
    if pattern.n > host.n or pattern.m > host.m:
        return None
    if all(host.has_edge(u, v) for u, v in pattern.edges):
        return model_from_branch_sets(host, pattern, [[v] for v in range(pattern.n)])

    masks = host.adjacency_masks()
    full = (1 << host.n) - 1
    t = pattern.n
    order = _placement_order(pattern)
    twin = _twin_classes(pattern)
    max_size = host.n - t + 1
    candidates = sorted(connected_subsets(masks, full, max_size), key=lambda s: (s.bit_count(), s))
    nbhd = {}
    for s in candidates:
        acc = 0
        for v in _bits(s):
            acc |= masks[v]
        nbhd[s] = acc & ~s
    chosen: dict[int, int] = {}

    def low_bit(s: int) -> int:
        return (s & -s).bit_length() - 1

    def feasible(free: int, pos: int) -> bool:
        remaining = order[pos:]
        if free.bit_count() < len(remaining):
            return False
        comps = _component_masks(masks, free)
        for y in remaining:
            need = [chosen[w] for w in pattern.neighbours(y) if w in chosen]
            if not need:
                continue
            if not any(all(nbhd_of(c) & s for s in need) for c in comps):
                return False
        return True

    def nbhd_of(s: int) -> int:
        if s in nbhd:
            return nbhd[s]
        acc = 0
        for v in _bits(s):
            acc |= masks[v]
        return acc & ~s

    def search(pos: int, free: int) -> bool:
        if pos == t:
            return True
        x = order[pos]
        need = [chosen[w] for w in pattern.neighbours(x) if w in chosen]
        deg = pattern.degree(x)
        floor = max((low_bit(chosen[y]) for y in chosen if twin[y] == twin[x]), default=-1)
        for s in candidates:
            if s & ~free or nbhd[s].bit_count() < deg:
                continue
            if low_bit(s) <= floor:
                continue
            if any(not (nbhd[s] & c) for c in need):
                continue
            chosen[x] = s
            rest = free & ~s
            if feasible(rest, pos + 1) and search(pos + 1, rest):
                return True
            del chosen[x]
        return False

    if not search(0, full):
        return None
    vertex_sets = [sorted(_bits(chosen[i])) for i in range(t)]
    return model_from_branch_sets(host, pattern, vertex_sets)
