import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bipforge.errors import GraphParseError
from bipforge.graph import Graph
from bipforge.io import graph_from_json, graph_to_json, graph_to_text, parse_json, parse_text, read_graph, write_graph


def test_parse_text_basic():
    g = parse_text("3 2\n0 1\n1 2\n")
    assert g == Graph(3, [(0, 1), (1, 2)])


def test_parse_text_comments_and_blank_lines():
    g = parse_text("# triangle\n3 3\n\n0 1\n0 2\n1 2\n")
    assert g.m == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 2\n0 1\n1 1\n", "line 3"),
        ("3 2\n0 1\n0 1\n", "line 3"),
        ("3 1\n0 5\n", "line 2"),
        ("3 1\n2 1\n", "line 2"),
        ("3 1\nx y\n", "line 2"),
    ],
)
def test_parse_text_errors_name_the_line(text, line):
    with pytest.raises(GraphParseError, match=line):
        parse_text(text)


def test_parse_text_edge_count_mismatch():
    with pytest.raises(GraphParseError):
        parse_text("3 2\n0 1\n")


def test_json_rejects_duplicates_and_loops():
    with pytest.raises(GraphParseError, match="edge 1"):
        graph_from_json({"n": 3, "edges": [[0, 1], [1, 0]]})
    with pytest.raises(GraphParseError, match="loop"):
        graph_from_json({"n": 3, "edges": [[2, 2]]})
    with pytest.raises(GraphParseError):
        parse_json("{not json")


def test_labels_round_trip():
    g = graph_from_json({"n": 2, "edges": [[0, 1]], "labels": {"0": "a", "1": "b"}})
    assert g.labels == {0: "a", 1: "b"}
    assert graph_from_json(graph_to_json(g)).labels == g.labels


@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_round_trips(data):
    n, pairs = data
    g = Graph(n, {(min(a, b), max(a, b)) for a, b in pairs if a != b})
    assert parse_text(graph_to_text(g)) == g
    assert parse_json(json.dumps(graph_to_json(g))) == g


def test_read_graph_detects_format(tmp_path):
    g = Graph(4, [(0, 1), (2, 3)])
    write_graph(g, tmp_path / "g.json")
    (tmp_path / "g.txt").write_text(graph_to_text(g))
    assert read_graph(tmp_path / "g.json") == g
    assert read_graph(tmp_path / "g.txt") == g
