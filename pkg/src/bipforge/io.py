"""Graph file formats.

Text format: first line ``n m``, then ``m`` lines ``u v`` (0-based, ``u < v``).
Blank lines and lines starting with ``#`` are ignored.

JSON format: ``{"n": int, "edges": [[u, v], ...], "labels": {vertex: str}}``
with ``labels`` optional.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphParseError
from .graph import Graph


def parse_text(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphParseError(f"line {lineno}: negative header values")
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise GraphParseError(f"line {lineno}: loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if a > b:
            raise GraphParseError(f"line {lineno}: edge must be written with u < v")
        if (a, b) in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge {a} {b} (first on line {seen[(a, b)]})")
        seen[(a, b)] = lineno
        edges.append((a, b))
    if header is None:
        raise GraphParseError("line 1: missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphParseError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def graph_from_json(obj) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphParseError("JSON graph must be an object with 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise GraphParseError("'n' must be a nonnegative integer")
    seen: dict[tuple[int, int], int] = {}
    edges = []
    for i, e in enumerate(obj["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphParseError(f"edge {i}: expected [u, v], got {e!r}")
        u, v = e
        if u == v:
            raise GraphParseError(f"edge {i}: loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"edge {i}: vertex out of range 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"edge {i}: duplicate of edge {seen[key]} {list(key)}")
        seen[key] = i
        edges.append(key)
    labels = obj.get("labels") or {}
    try:
        labels = {int(k): str(val) for k, val in labels.items()}
    except (AttributeError, ValueError):
        raise GraphParseError("'labels' must map vertex ids to strings") from None
    return Graph(n, edges, labels)


def parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    return graph_from_json(obj)


def graph_to_json(g: Graph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels:
        out["labels"] = {str(k): v for k, v in sorted(g.labels.items())}
    return out


def graph_to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    """Read a graph file, choosing the format from its content."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph_to_json(g)) + "\n")
