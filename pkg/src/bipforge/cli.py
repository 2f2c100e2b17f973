"""Command line interface.

Every subcommand prints JSON to stdout, or writes it to ``--out FILE``.
Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .caps import resolve_cap
from .errors import BipforgeError, ConfigError
from .experiments import builtin_names, builtin_spec, load_spec, run_experiment
from .generators import FAMILIES, complete, random_graph, random_lengths, subdivide, wall
from .graph import Graph, TwoColouring, two_colour
from .io import graph_to_json, graph_to_text, read_graph
from .minors import (
    MinorModel,
    ShallowModel,
    bipartize_minor,
    bipartize_shallow,
    find_minor_model,
    prune_model,
    prune_shallow,
)
from .oracles import (
    c_param,
    hadwiger,
    hajos,
    nabla_r,
    pathwidth_exact,
    treedepth_exact,
    treewidth_exact,
)
from .switching import PathSystem, half_cut, select_paths
from .walls import extract_bipartite_wall, import_wall_subdivision, required_width, verify_wall_subdivision

FORMATS = """\
PRNG: SplitMix64, all arithmetic modulo 2**64.
  state += 0x9E3779B97F4A7C15
  z = state
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
  z = (z ^ (z >> 27)) * 0x94D049BB133111EB
  output z ^ (z >> 31)
  The seed is the initial state.
  below(b)        = next() % b
  randint(lo, hi) = lo + below(hi - lo + 1)
  bernoulli(p)    = next() * den < num * 2**64, for p = num/den in lowest terms
  random_graph(n, p, seed): one bernoulli(p) per pair (u, v), u < v, lexicographic order.
  random_lengths(g, L, seed): one randint(1, L) per edge in sorted edge order.

Graph text format (input only):
  first line "n m", then m lines "u v" with 0 <= u < v < n.
  Blank lines and lines starting with '#' are skipped.

Graph JSON format:
  {"n": int, "edges": [[u, v], ...], "labels": {"vertex": "label", ...}}
  labels are optional. Loops and duplicate edges are rejected in both formats.

Wall coordinates sidecar:
  {"rows": 2j, "cols": k, "coords": [[l, i, vertex], ...]}
  v_l^(i) is the l-th vertex of horizontal path i. Generated walls use
  vertex id (i - 1) * 2j + (l - 1).

Path system:
  {"pieces": [[vertex, ...] | {"vertices": [...], "edges": [[u, v], ...]}, ...],
   "paths": [[v1, ..., vn], ...]}
  List pieces are induced subgraphs of the host.

Minor model:
  {"pattern": graph, "branch_sets": [[vertex, ...], ...],
   "realizers": [[i, j, u, v], ...], "branch_edges": [[[u, v], ...], ...]}
  branch_edges is optional; without it branch sets are induced.
"""


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=None if getattr(args, "compact", False) else 2, sort_keys=False)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None


def _certified(sub, colouring) -> bool:
    return isinstance(two_colour(sub), TwoColouring) and colouring.is_proper(sub.edges)


# --- gen --------------------------------------------------------------------------


def cmd_gen(args) -> int:
    kind = args.kind
    coords = None
    record = None
    if kind == "wall":
        g, coords = wall(args.rows, args.cols)
    elif kind == "grid":
        g = FAMILIES["grid"](args.rows, args.cols)
    elif kind == "random":
        g = random_graph(args.n, Fraction(args.p), args.seed)
    elif kind == "subdivide":
        if not args.graph:
            raise ConfigError("gen subdivide needs --graph")
        base = read_graph(args.graph)
        g, record = subdivide(base, random_lengths(base, args.max_len, args.seed))
    elif kind == "complete_bipartite":
        g = FAMILIES[kind](args.a, args.b)
    elif kind == "binary_tree":
        g = FAMILIES[kind](args.h)
    else:
        g = FAMILIES[kind](args.n)

    if args.out:
        out = Path(args.out)
        out.write_text(graph_to_text(g) if args.format == "text" else json.dumps(graph_to_json(g)) + "\n")
        if coords is not None:
            out.with_suffix(".coords.json").write_text(json.dumps(coords.to_json()) + "\n")
        if record is not None:
            rec = [[u, v, p] for (u, v), p in sorted(record.items())]
            out.with_suffix(".record.json").write_text(json.dumps(rec) + "\n")
        return 0
    body = graph_to_json(g)
    if coords is not None:
        body = {"graph": body, "coords": coords.to_json()}
    elif record is not None:
        body = {"graph": body, "record": [[u, v, p] for (u, v), p in sorted(record.items())]}
    _emit(body, args)
    return 0


# --- bipartize ----------------------------------------------------------------------


def cmd_bipartize(args) -> int:
    g = read_graph(args.graph)
    if args.system:
        system = PathSystem.from_json(g, _load_json(args.system))
        result = select_paths(system)
        total = len(system.paths)
    else:
        result = half_cut(g)
        total = g.m
    body = result.to_json()
    body["certified"] = _certified(result.subgraph, result.colouring)
    body["half_bound"] = 2 * len(result.selected) >= total
    _emit(body, args)
    return 0 if body["certified"] and body["half_bound"] else 1


# --- minor -----------------------------------------------------------------------


def _pattern(args) -> Graph:
    if args.clique is not None:
        return complete(args.clique)
    if args.pattern:
        return read_graph(args.pattern)
    raise ConfigError("give --pattern FILE or --clique T")


def cmd_minor_find(args) -> int:
    host = read_graph(args.graph)
    model = find_minor_model(host, _pattern(args), cap=resolve_cap("minor", args.cap))
    _emit({"found": model is not None, "model": model.to_json() if model else None}, args)
    return 0


def cmd_minor_bipartize(args) -> int:
    host = read_graph(args.graph)
    model = MinorModel.from_json(host, _load_json(args.model))
    model.validate()
    body: dict = {}
    if args.r is None:
        pruned = prune_model(model)
        result, h2 = bipartize_minor(pruned)
    else:
        shallow = prune_shallow(ShallowModel(model, args.r))
        result, h2, certs = bipartize_shallow(shallow)
        pruned = shallow.model
        body["certificates"] = [{"branch": c.branch, "centre": c.centre, "radius": c.radius} for c in certs]
    body.update(
        result=result.to_json(),
        pruned_model=pruned.to_json(),
        contracted=graph_to_json(h2),
        certified=_certified(result.subgraph, result.colouring),
        half_bound=2 * h2.m >= model.pattern.m,
    )
    _emit(body, args)
    return 0 if body["certified"] and body["half_bound"] else 1


# --- wall ------------------------------------------------------------------------


def cmd_wall_extract(args) -> int:
    start = time.perf_counter()
    k = args.k
    base, coords = wall(required_width(k), k)
    host, record = subdivide(base, random_lengths(base, args.max_sub, args.seed))
    w = import_wall_subdivision(host, coords, record)
    ex = extract_bipartite_wall(w)
    bipartite = _certified(ex.subgraph, ex.colouring)
    verified = not hasattr(verify_wall_subdivision(ex.subgraph, k, 2 * k), "reason")
    body = {
        "k": k,
        "seed": args.seed,
        "host_vertices": host.n,
        "bipartite": bipartite,
        "A_sizes": [len(a) for a in ex.index_sets],
        "verified": verified,
        "columns": list(ex.columns),
    }
    if args.full:
        body["extraction"] = ex.to_json()
    body["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    _emit(body, args)
    return 0 if bipartite and verified else 1


def cmd_wall_verify(args) -> int:
    g = read_graph(args.graph)
    res = verify_wall_subdivision(g, args.k, args.rows)
    if hasattr(res, "reason"):
        _emit({"verified": False, "mismatch": res.reason}, args)
        return 1
    _emit({"verified": True, "coords": res.to_json()}, args)
    return 0


# --- oracle ----------------------------------------------------------------------


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    p = args.param
    if p in ("tw", "pw"):
        value, d = (treewidth_exact if p == "tw" else pathwidth_exact)(g, cap=args.cap)
        body = {"value": value, "witness": d.to_json()}
    elif p == "td":
        value, f = treedepth_exact(g, cap=args.cap)
        body = {"value": value, "witness": f.to_json()}
    elif p in ("eta", "eta-top"):
        value, model = (hadwiger if p == "eta" else hajos)(g, cap=args.cap)
        body = {"value": value, "witness": model.to_json() if model else None}
    elif p == "nabla":
        value, wit = nabla_r(g, args.r, cap=args.cap)
        body = {
            "value": str(value),
            "value_float": float(value),
            "r": args.r,
            "witness": {"parts": [list(q) for q in wit.parts], "kept": list(wit.kept)},
        }
    else:
        a, b, c = c_param(g, cap=args.cap)
        body = {"value": c, "witness": {"a": a, "b": b}}
    _emit(body, args)
    return 0


# --- experiment ------------------------------------------------------------------


def cmd_experiment(args) -> int:
    if args.list:
        _emit(builtin_names(), args)
        return 0
    if args.spec:
        spec = load_spec(args.spec)
    elif args.name:
        spec = builtin_spec(args.name)
    else:
        raise ConfigError("give a built-in experiment name or --spec FILE")
    report = run_experiment(spec, jobs=args.jobs)
    _emit(report.to_json(timings=not args.no_timings), args)
    return 0 if report.ok else 1


def cmd_formats(args) -> int:
    if args.out:
        Path(args.out).write_text(FORMATS)
    else:
        sys.stdout.write(FORMATS)
    return 0


# --- parser ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    p.add_argument("--compact", action="store_true", help="single-line JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bipforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph")
    gen.add_argument("kind", choices=sorted(set(FAMILIES) | {"random", "subdivide"}))
    gen.add_argument("--rows", type=int, default=4, help="grid/wall: vertices per horizontal path")
    gen.add_argument("--cols", type=int, default=2, help="grid/wall: number of horizontal paths")
    gen.add_argument("--n", type=int, default=5)
    gen.add_argument("--a", type=int, default=2)
    gen.add_argument("--b", type=int, default=2)
    gen.add_argument("--h", type=int, default=3)
    gen.add_argument("--p", default="1/2", help="edge probability as a fraction or decimal")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--graph", help="subdivide: input graph file")
    gen.add_argument("--max-len", type=int, default=2, help="subdivide: lengths drawn from [1, L]")
    gen.add_argument("--format", choices=["json", "text"], default="json")
    _common(gen)
    gen.set_defaults(func=cmd_gen)

    bip = sub.add_parser("bipartize", help="select half of a path system (or of the edges)")
    bip.add_argument("--graph", required=True)
    bip.add_argument("--system", help="path system JSON; without it every edge is a path")
    _common(bip)
    bip.set_defaults(func=cmd_bipartize)

    minor = sub.add_parser("minor", help="minor models")
    msub = minor.add_subparsers(dest="minor_command", required=True)
    mf = msub.add_parser("find", help="exhaustive minor model search")
    mf.add_argument("--graph", required=True)
    mf.add_argument("--pattern")
    mf.add_argument("--clique", type=int)
    mf.add_argument("--cap", type=int)
    _common(mf)
    mf.set_defaults(func=cmd_minor_find)
    mb = msub.add_parser("bipartize", help="prune and bipartize a minor model")
    mb.add_argument("--graph", required=True)
    mb.add_argument("--model", required=True)
    mb.add_argument("--r", type=int, help="treat as a shallow model of this radius")
    _common(mb)
    mb.set_defaults(func=cmd_minor_bipartize)

    wl = sub.add_parser("wall", help="wall subdivisions")
    wsub = wl.add_subparsers(dest="wall_command", required=True)
    we = wsub.add_parser("extract", help="extract a bipartite wall from a random subdivided wall")
    we.add_argument("--k", type=int, required=True)
    we.add_argument("--seed", type=int, default=0)
    we.add_argument("--max-sub", type=int, default=3)
    we.add_argument("--full", action="store_true", help="include the extracted subgraph")
    _common(we)
    we.set_defaults(func=cmd_wall_extract)
    wv = wsub.add_parser("verify", help="check that a graph is a subdivided wall")
    wv.add_argument("--graph", required=True)
    wv.add_argument("--k", type=int, required=True, help="number of horizontal paths")
    wv.add_argument("--rows", type=int, required=True, help="vertices per horizontal path")
    _common(wv)
    wv.set_defaults(func=cmd_wall_verify)

    orc = sub.add_parser("oracle", help="exact small-instance parameters")
    orc.add_argument("--param", required=True, choices=["tw", "pw", "td", "eta", "eta-top", "nabla", "c"])
    orc.add_argument("--graph", required=True)
    orc.add_argument("--r", type=int, help="nabla radius; omit for unbounded")
    orc.add_argument("--cap", type=int)
    _common(orc)
    orc.set_defaults(func=cmd_oracle)

    exp = sub.add_parser("experiment", help="run a built-in or custom experiment")
    exp.add_argument("name", nargs="?")
    exp.add_argument("--spec", help="experiment spec JSON file")
    exp.add_argument("--list", action="store_true")
    exp.add_argument("--jobs", type=int, default=1)
    exp.add_argument("--no-timings", action="store_true", help="drop elapsed_ms from records")
    _common(exp)
    exp.set_defaults(func=cmd_experiment)

    fmt = sub.add_parser("formats", help="print the PRNG and file format reference")
    fmt.add_argument("--out", metavar="FILE")
    fmt.set_defaults(func=cmd_formats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BipforgeError, ValueError, OSError) as exc:
        print(f"bipforge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
