from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipforge.errors import DomainError
from bipforge.generators import complete, cycle, grid, path, random_graph, wall
from bipforge.graph import (
    Colour,
    Graph,
    OddCycleWitness,
    SubgraphRef,
    TwoColouring,
    assemble,
    bfs_distances,
    components,
    is_bipartite,
    longest_path,
    radius,
    switch,
    two_colour,
)

B, W = Colour.BLACK, Colour.WHITE


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def brute_bipartite(g: Graph) -> bool:
    return any(all(bits[u] != bits[v] for u, v in g.edges) for bits in product((0, 1), repeat=g.n))


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])


def test_adjacency_sorted_and_counts():
    g = Graph(4, [(3, 0), (0, 1), (2, 0)])
    assert g.neighbours(0) == (1, 2, 3)
    assert g.m == 3
    assert g.edges == ((0, 1), (0, 2), (0, 3))
    assert g.average_degree() == 2 * 3 / 4


def test_two_colour_path():
    c = two_colour(path(4))
    assert isinstance(c, TwoColouring)
    assert [c[v] for v in range(4)] == [B, W, B, W]


def test_two_colour_odd_cycle_witness():
    w = two_colour(cycle(5))
    assert isinstance(w, OddCycleWitness)
    assert w.length == 5
    g = cycle(5)
    cyc = list(w.cycle)
    assert all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def test_wall_is_bipartite():
    g, _ = wall(8, 6)
    c = two_colour(g)
    assert isinstance(c, TwoColouring) and c.is_proper(g.edges)


def test_canonical_colouring_min_vertex_black():
    g = Graph(6, [(4, 5), (1, 2), (2, 3)])
    c = two_colour(g)
    for comp in components(g):
        assert c[min(comp)] is B


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_two_colour_matches_brute_force(g):
    res = two_colour(g)
    assert isinstance(res, TwoColouring) == brute_bipartite(g)
    if isinstance(res, TwoColouring):
        assert res.is_proper(g.edges)
        assert res.domain == frozenset(range(g.n))
    else:
        assert res.length % 2 == 1


def test_switch_examples():
    c = TwoColouring({0: B, 1: W})
    assert switch(c, {0, 1}).colour == {0: W, 1: B}
    assert switch(c, set()).colour == c.colour
    with pytest.raises(DomainError):
        switch(c, {2})


@given(st.dictionaries(st.integers(0, 20), st.sampled_from([B, W]), min_size=1), st.data())
def test_switch_is_involution(colour, data):
    c = TwoColouring(colour)
    part = data.draw(st.sets(st.sampled_from(sorted(colour))))
    assert switch(switch(c, part), part).colour == c.colour


def test_switch_component_keeps_properness():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    c = two_colour(g)
    assert switch(c, {3, 4}).is_proper(g.edges)


def test_radius_examples():
    assert radius(Graph(1), 0) == 0
    assert all(radius(path(5), v) == 2 for v in range(5))
    assert radius(cycle(6), 0) == 3


@settings(max_examples=80, deadline=None)
@given(small_graphs(max_n=9))
def test_radius_diameter_sandwich(g):
    for comp in components(g):
        adj = {v: list(g.neighbours(v)) for v in comp}
        ecc = [max(bfs_distances(adj, v).values()) for v in comp]
        r, d = min(ecc), max(ecc)
        assert radius(g, comp[0]) == r
        assert r <= d <= 2 * r


def test_assemble_examples():
    g = Graph(4, [(0, 1), (2, 3)])
    assert assemble(g, []) == SubgraphRef()
    a = SubgraphRef.induced(g, [0, 1])
    assert assemble(g, [a, a]) == a
    both = assemble(g, [a, SubgraphRef.induced(g, [2, 3])])
    assert len(both.vertices) == 4 and len(both.edges) == 2
    with pytest.raises(DomainError):
        assemble(g, [SubgraphRef(frozenset([7]))])


def test_longest_path_examples():
    assert len(longest_path(path(6))) - 1 == 5
    assert len(longest_path(complete(4))) - 1 == 3
    p = longest_path(grid(3, 3))
    assert len(p) - 1 == 8
    g = grid(3, 3)
    assert all(g.has_edge(a, b) for a, b in zip(p, p[1:])) and len(set(p)) == len(p)


def test_longest_path_stops_at_limit():
    p = longest_path(grid(3, 3), limit=4)
    assert len(p) - 1 >= 4


def test_is_bipartite_random_graphs_agree_with_brute_force():
    for seed in range(30):
        g = random_graph(7, "2/5", seed)
        assert is_bipartite(g) == brute_bipartite(g)
