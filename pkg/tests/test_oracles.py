import math
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipforge.errors import CapExceeded
from bipforge.generators import (
    binary_tree,
    complete,
    complete_bipartite,
    cycle,
    edgeless,
    grid,
    path,
    random_graph,
    subdivide,
    wall,
)
from bipforge.graph import Graph, TwoColouring, two_colour
from bipforge.oracles import (
    Decomposition,
    c_param,
    find_binary_tree_subdivision,
    hadwiger,
    hajos,
    largest_biclique,
    longest_odd_cycle,
    minor_test,
    nabla_r,
    path_subgraph,
    pathwidth_exact,
    topological_minor_test,
    treedepth_exact,
    treewidth_exact,
    validate_decomposition,
    validate_elim_forest,
)


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


# --- independent brute-force oracles ----------------------------------------------


def brute_treewidth(g: Graph) -> int:
    """Minimum over elimination orderings of the largest later-neighbourhood."""
    best = g.n - 1
    for order in permutations(range(g.n)):
        adj = {v: set(g.neighbours(v)) for v in range(g.n)}
        width = 0
        for v in order:
            nb = adj.pop(v)
            width = max(width, len(nb))
            for a in nb:
                adj[a] |= nb - {a}
                adj[a].discard(v)
        best = min(best, width)
    return best


def brute_pathwidth(g: Graph) -> int:
    """Vertex separation number over all orderings."""
    best = g.n
    for order in permutations(range(g.n)):
        worst = 0
        for i in range(g.n):
            prefix = set(order[: i + 1])
            worst = max(worst, sum(1 for v in prefix if any(w not in prefix for w in g.neighbours(v))))
        best = min(best, worst)
    return best


def brute_treedepth(vertices: frozenset, g: Graph) -> int:
    if not vertices:
        return 0
    comps = []
    left = set(vertices)
    while left:
        stack = [left.pop()]
        comp = set(stack)
        while stack:
            u = stack.pop()
            for w in g.neighbours(u):
                if w in left:
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    if len(comps) > 1:
        return max(brute_treedepth(c, g) for c in comps)
    return 1 + min(brute_treedepth(vertices - {v}, g) for v in vertices)


def brute_nabla0(g: Graph) -> Fraction:
    best = Fraction(0)
    for size in range(1, g.n + 1):
        for s in combinations(range(g.n), size):
            ss = set(s)
            e = sum(1 for u, v in g.edges if u in ss and v in ss)
            best = max(best, Fraction(2 * e, size))
    return best


# --- widths ------------------------------------------------------------------------


def test_treewidth_examples():
    assert treewidth_exact(path(6))[0] == 1
    assert treewidth_exact(binary_tree(4))[0] == 1
    assert treewidth_exact(grid(3, 3))[0] == 3
    assert treewidth_exact(complete(5))[0] == 4
    assert treewidth_exact(Graph(0))[0] == -1
    assert treewidth_exact(edgeless(3))[0] == 0


def test_pathwidth_examples():
    assert pathwidth_exact(path(8))[0] == 1
    assert pathwidth_exact(binary_tree(4))[0] == 2
    assert pathwidth_exact(cycle(6))[0] == 2


def test_treedepth_examples():
    assert treedepth_exact(path(7))[0] == 3
    assert treedepth_exact(complete(4))[0] == 4
    assert treedepth_exact(edgeless(5))[0] == 1
    assert treedepth_exact(Graph(0))[0] == 0
    assert treedepth_exact(Graph(1))[0] == 1


@pytest.mark.parametrize("h, expected", [(1, 0), (2, 1), (3, 1), (4, 2)])
def test_binary_tree_pathwidth_values(h, expected):
    value, d = pathwidth_exact(binary_tree(h))
    assert value == expected == math.ceil((h - 1) / 2)
    assert not validate_decomposition(binary_tree(h), d)


def test_binary_tree_3_pathwidth_matches_brute_force():
    assert brute_pathwidth(binary_tree(3)) == 1


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_widths_match_brute_force(g):
    tw, td_ = treewidth_exact(g)
    pw, pd = pathwidth_exact(g)
    td, forest = treedepth_exact(g)
    assert tw == brute_treewidth(g)
    assert pw == brute_pathwidth(g)
    assert td == brute_treedepth(frozenset(range(g.n)), g)
    assert not validate_decomposition(g, td_)
    assert not validate_decomposition(g, pd)
    assert not validate_elim_forest(g, forest)
    assert td_.width == tw and pd.width == pw and forest.height == td
    assert tw <= pw <= td - 1


@settings(max_examples=40, deadline=None)
@given(st.integers(6, 12), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1)]), st.integers(0, 2**64 - 1))
def test_width_chain_on_larger_graphs(n, p, seed):
    g = random_graph(n, p, seed)
    tw, d1 = treewidth_exact(g)
    pw, d2 = pathwidth_exact(g)
    td, f = treedepth_exact(g)
    assert tw <= pw <= td - 1
    assert not validate_decomposition(g, d1) and not validate_decomposition(g, d2) and not validate_elim_forest(g, f)


def test_validators_reject_bad_witnesses():
    g = cycle(4)
    bad = Decomposition("tree", (frozenset([0, 1]), frozenset([2, 3])), ((0, 1),))
    problems = validate_decomposition(g, bad)
    assert any("not covered" in p for p in problems)
    broken = Decomposition("tree", (frozenset([0, 1, 2]), frozenset([3]), frozenset([0, 3, 2])), ((0, 1), (1, 2)))
    assert any("not connected" in p for p in validate_decomposition(g, broken))


def test_treewidth_minor_monotone():
    g = grid(3, 4)
    tw_g = treewidth_exact(g)[0]
    for u, v in g.edges[::3]:
        keep = [w for w in range(g.n) if w != v]
        idx = {w: i for i, w in enumerate(keep)}
        edges = {tuple(sorted((idx[u if a == v else a], idx[u if b == v else b]))) for a, b in g.edges if {a, b} != {u, v}}
        h = Graph(g.n - 1, [e for e in edges if e[0] != e[1]])
        assert treewidth_exact(h)[0] <= tw_g


def test_wall_treewidth_lower_bound():
    assert treewidth_exact(wall(4, 4)[0])[0] >= 2
    assert treewidth_exact(wall(6, 6)[0])[0] >= 3


def test_caps_refuse_and_env_override(monkeypatch):
    with pytest.raises(CapExceeded):
        pathwidth_exact(path(30))
    with pytest.raises(CapExceeded):
        pathwidth_exact(path(10), cap=5)
    monkeypatch.setenv("BIPFORGE_CAP", "4")
    with pytest.raises(CapExceeded):
        treedepth_exact(path(5))
    monkeypatch.setenv("BIPFORGE_CAP", "1000")
    with pytest.raises(CapExceeded):
        pathwidth_exact(path(23))


# --- containment -------------------------------------------------------------------


def test_minor_test_examples():
    assert minor_test(wall(4, 4)[0], grid(2, 2), cap=16) is not None
    assert minor_test(path(9), cycle(3)) is None
    g = grid(3, 3)
    m = minor_test(g, g)
    assert all(b.vertices == frozenset([i]) for i, b in enumerate(m.branch_sets))


def test_topological_examples():
    k4 = complete(4)
    sub, _ = subdivide(k4, {e: 2 for e in k4.edges})
    found = topological_minor_test(sub, k4)
    assert found is not None
    found.validate()
    assert topological_minor_test(grid(3, 3), complete(5)) is None


@pytest.mark.parametrize("host, pattern", [(wall(4, 4)[0], grid(2, 2)), (grid(3, 3), binary_tree(3)), (grid(3, 3), complete_bipartite(1, 3))])
def test_cubic_patterns_minor_iff_topological(host, pattern):
    assert (minor_test(host, pattern, cap=16) is not None) == (topological_minor_test(host, pattern) is not None)


def test_hadwiger_hajos_examples():
    assert hadwiger(complete(5))[0] == 5
    assert hadwiger(grid(3, 3))[0] == 4
    assert hajos(cycle(7))[0] == 3


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=7))
def test_hadwiger_at_least_hajos(g):
    eta, model = hadwiger(g)
    eta_top, tmodel = hajos(g)
    assert eta >= eta_top
    model.validate()
    tmodel.validate()
    if eta <= 4:  # K_t with t <= 4 has max degree <= 3
        assert eta == eta_top


def test_binary_tree_and_path_search():
    assert find_binary_tree_subdivision(binary_tree(3), 3) is not None
    assert find_binary_tree_subdivision(grid(3, 3), 2) is not None
    assert find_binary_tree_subdivision(path(20), 2, cap=20) is not None
    assert find_binary_tree_subdivision(path(20), 3, cap=20) is None
    p = path_subgraph(grid(3, 3), 8)
    assert p is not None and len(p) == 9
    assert path_subgraph(binary_tree(3), 5) is None


# --- density -----------------------------------------------------------------------


def test_nabla_examples():
    tree = binary_tree(3)
    for r in (0, 1, None):
        assert nabla_r(tree, r)[0] < 2
    assert nabla_r(complete(4), 0)[0] == 3
    assert nabla_r(grid(3, 3), None)[0] >= 3


@settings(max_examples=30, deadline=None)
@given(small_graphs(max_n=7))
def test_nabla_properties(g):
    values = [nabla_r(g, r)[0] for r in (0, 1, 2, None)]
    assert values == sorted(values)
    assert values[0] == brute_nabla0(g)
    assert values[0] >= g.average_degree()


def test_nabla_witness_is_consistent():
    g = grid(3, 3)
    value, wit = nabla_r(g, 1)
    owner = {v: i for i, part in enumerate(wit.parts) for v in part}
    kept = set(wit.kept)
    edges = {tuple(sorted((owner[u], owner[v]))) for u, v in g.edges if owner[u] != owner[v] and owner[u] in kept and owner[v] in kept}
    assert Fraction(2 * len(edges), len(kept)) == value


# --- a, b, c -----------------------------------------------------------------------


def test_c_param_examples():
    a, b, c = c_param(cycle(7))
    assert a == 7 and c == 7
    assert c_param(complete_bipartite(3, 3)) == (1, 3, 3)
    assert c_param(edgeless(3)) == (1, 0, 1)


def test_every_bipartite_subgraph_of_c7_has_c_at_most_1():
    g = cycle(7)
    for size in range(g.m + 1):
        for sub in combinations(g.edges, size):
            h = Graph(g.n, sub)
            if isinstance(two_colour(h), TwoColouring):
                assert c_param(h).c <= 1


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=8))
def test_odd_cycle_and_biclique_witnesses(g):
    cyc = longest_odd_cycle(g)
    if cyc:
        assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
        assert all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
    else:
        assert isinstance(two_colour(g), TwoColouring)
    left, right = largest_biclique(g)
    assert len(left) == len(right)
    assert all(g.has_edge(u, v) for u in left for v in right)
