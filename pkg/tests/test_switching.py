from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipforge.errors import DomainError, ValidationError
from bipforge.generators import complete, complete_bipartite, cycle, grid, random_graph
from bipforge.graph import Colour, Graph, SubgraphRef, TwoColouring, assemble, switch, two_colour
from bipforge.switching import (
    PathClass,
    PathSystem,
    classify_path,
    half_cut,
    kept_edges,
    random_path_system,
    select_paths,
)

B, W = Colour.BLACK, Colour.WHITE


def singletons(*vs):
    return tuple(SubgraphRef(frozenset([v])) for v in vs)


def max_bipartite_subset(sys: PathSystem) -> int:
    """Largest number of paths whose union with the pieces is bipartite, by enumeration."""
    parts = [SubgraphRef.from_path(p) for p in sys.paths]
    for size in range(len(parts), -1, -1):
        for chosen in combinations(parts, size):
            if isinstance(two_colour(assemble(sys.host, list(sys.pieces) + list(chosen))), TwoColouring):
                return size
    return 0


def max_cut(g: Graph) -> int:
    best = 0
    for mask in range(1 << max(g.n - 1, 0)):
        best = max(best, sum(((mask >> u) ^ (mask >> v)) & 1 for u, v in g.edges))
    return best


def certified(result) -> bool:
    return isinstance(two_colour(result.subgraph), TwoColouring) and result.colouring.is_proper(result.subgraph.edges)


def test_classify_examples():
    assert classify_path((0, 1), TwoColouring({0: B, 1: W})) is PathClass.AGREEABLE
    assert classify_path((0, 1), TwoColouring({0: B, 1: B})) is PathClass.DISAGREEABLE
    assert classify_path((0, 5, 1), TwoColouring({0: B, 1: B})) is PathClass.AGREEABLE
    with pytest.raises(DomainError):
        classify_path((0, 5, 1), TwoColouring({0: B}))


@given(st.integers(1, 9), st.sampled_from([B, W]), st.sampled_from([B, W]))
def test_switching_an_endpoint_flips_the_class(length, a, b):
    p = tuple(range(length + 1))
    c = TwoColouring({0: a, length: b})
    flipped = switch(c, {length})
    assert classify_path(p, c) is not classify_path(p, flipped)


def test_three_parallel_paths():
    host = Graph(3, [(0, 1), (0, 2), (1, 2)])
    sys = PathSystem(host, singletons(0, 1), [(0, 1), (0, 1), (0, 2, 1)])
    r = select_paths(sys)
    assert len(r.selected) >= 2
    assert r.selected == (0, 1)
    assert max_bipartite_subset(sys) == 2
    assert certified(r)


def test_no_paths():
    host = Graph(4, [(0, 1), (2, 3)])
    pieces = (SubgraphRef.induced(host, [0, 1]), SubgraphRef.induced(host, [2, 3]))
    r = select_paths(PathSystem(host, pieces, ()))
    assert r.selected == ()
    assert r.subgraph == assemble(host, list(pieces))
    assert certified(r)


def test_k4_as_singletons():
    g = complete(4)
    r = select_paths(PathSystem(g, singletons(0, 1, 2, 3), g.edges))
    assert len(r.selected) >= 3
    assert max_cut(g) == 4


def test_switch_log_and_steps():
    g = complete(4)
    r = select_paths(PathSystem(g, singletons(0, 1, 2, 3), g.edges))
    assert len(r.switch_log) == 4 and r.switch_log[0] is False
    assert [s.new_paths for s in r.steps] == [0, 1, 2, 3]
    assert r.steps[-1].paths_so_far == 6
    assert r.steps[-1].selected_so_far == len(r.selected)


def test_tie_does_not_switch():
    # one agreeable and one disagreeable path into the second piece
    host = Graph(4, [(0, 2), (1, 3), (2, 3)])
    pieces = (SubgraphRef.induced(host, [0, 1]), SubgraphRef.induced(host, [2, 3]))
    r = select_paths(PathSystem(host, pieces, [(0, 2), (1, 3)]))
    assert r.switch_log == (False, False)
    assert len(r.selected) == 1


def test_validation_errors_name_the_object():
    host = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    with pytest.raises(ValidationError, match="share vertex"):
        PathSystem(host, (SubgraphRef(frozenset([0, 1]), frozenset([(0, 1)])), SubgraphRef(frozenset([1]))), ()).validate()
    with pytest.raises(ValidationError, match="interior vertex 2 lies in piece"):
        PathSystem(host, singletons(1, 2, 3), [(1, 2, 3)]).validate()
    with pytest.raises(ValidationError, match="share interior"):
        PathSystem(host, singletons(0, 2), [(0, 1, 2), (2, 1, 0)]).validate()
    with pytest.raises(ValidationError, match="same piece"):
        PathSystem(host, (SubgraphRef.induced(host, [0, 1]),), [(0, 1)]).validate()
    with pytest.raises(ValidationError, match="not a simple path"):
        PathSystem(host, singletons(0, 2), [(0, 2)]).validate()
    tri = complete(3)
    with pytest.raises(ValidationError, match="not bipartite"):
        PathSystem(tri, (SubgraphRef.whole(tri),), ()).validate()


def test_from_json_descriptor():
    host = cycle(6)
    sys = PathSystem.from_json(host, {"pieces": [[0, 1], {"vertices": [3, 4], "edges": [[3, 4]]}], "paths": [[1, 2, 3], [0, 5, 4]]})
    r = select_paths(sys)
    assert certified(r) and len(r.selected) == 2


def test_half_cut_examples():
    assert len(half_cut(complete(4)).selected) >= 3
    r = half_cut(cycle(5))
    assert len(r.selected) == 4 and max_cut(cycle(5)) == 4


@pytest.mark.parametrize("g", [grid(3, 4), complete_bipartite(3, 4), cycle(8), Graph(4, [(1, 2), (2, 3), (0, 3)])])
def test_half_cut_keeps_bipartite_graphs_whole(g):
    r = half_cut(g)
    assert sorted(kept_edges(g, r)) == list(g.edges)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.fractions(0, 1, max_denominator=10), st.integers(0, 2**64 - 1))
def test_half_cut_properties(n, p, seed):
    g = random_graph(n, p, seed)
    r = half_cut(g)
    assert certified(r)
    assert 2 * len(r.selected) >= g.m
    if n <= 10:
        assert len(r.selected) <= max_cut(g)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_select_paths_properties(seed):
    sys = random_path_system(seed)
    r = select_paths(sys)
    assert certified(r)
    assert 2 * len(r.selected) >= len(sys.paths)
    for step in r.steps:
        assert 2 * step.kept >= step.new_paths
    covered = set(r.colouring.domain)
    for piece in sys.pieces:
        assert piece.vertices <= covered


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_select_paths_never_beats_brute_force(seed):
    sys = random_path_system(seed, max_pieces=4, max_paths=8, max_len=3)
    r = select_paths(sys)
    assert 2 * len(r.selected) >= len(sys.paths)
    assert len(r.selected) <= max_bipartite_subset(sys)


def test_random_path_system_is_valid_and_deterministic():
    for seed in range(50):
        a, b = random_path_system(seed), random_path_system(seed)
        a.validate()
        assert a.paths == b.paths and a.host == b.host
