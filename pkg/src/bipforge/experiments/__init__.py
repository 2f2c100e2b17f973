"""Reproducible experiment runner.

An experiment spec names a generator, a list of seeds, a pipeline of
operations and a list of checks. Every seed produces one record. Records hold
a digest of the generated inputs, a JSON summary of the outputs, the check
results and the elapsed time. Digests never include timings, so two runs of the
same spec produce identical reports apart from ``elapsed_ms``.

Built-in specs live next to this module as ``*.json`` files.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Any, Callable

from ..errors import ConfigError
from ..generators import (
    SplitMix64,
    complete,
    family,
    random_graph,
    random_lengths,
    subdivide,
    wall,
)
from ..graph import Graph, SubgraphRef, TwoColouring, bfs_distances, two_colour
from ..io import graph_to_json
from ..minors import (
    ShallowModel,
    bipartize_minor,
    bipartize_shallow,
    contract,
    find_minor_model,
    model_from_branch_sets,
    prune_model,
    prune_shallow,
)
from ..oracles import (
    c_param,
    minor_test,
    pathwidth_exact,
    treedepth_exact,
    treewidth_exact,
    validate_decomposition,
    validate_elim_forest,
)
from ..switching import half_cut, random_path_system, select_paths
from ..walls import extract_bipartite_wall, import_wall_subdivision, required_width, verify_wall_subdivision

U64 = 1 << 64


@dataclass
class ExperimentSpec:
    name: str
    seeds: list[int]
    generator: dict
    pipeline: list[dict] = field(default_factory=list)
    checks: list[str] = field(default_factory=list)
    description: str = ""

    @classmethod
    def from_json(cls, obj) -> "ExperimentSpec":
        if not isinstance(obj, dict):
            raise ConfigError("experiment spec must be a JSON object")
        unknown = set(obj) - {"name", "seeds", "generator", "pipeline", "checks", "description"}
        if unknown:
            raise ConfigError(f"unknown spec fields {sorted(unknown)}")
        try:
            seeds = obj["seeds"]
            if isinstance(seeds, dict):
                seeds = list(range(int(seeds["first"]), int(seeds["first"]) + int(seeds["count"])))
            pipeline = [{"op": p} if isinstance(p, str) else dict(p) for p in obj.get("pipeline", [])]
            spec = cls(
                name=obj["name"],
                seeds=list(seeds),
                generator=dict(obj["generator"]),
                pipeline=pipeline,
                checks=list(obj.get("checks", [])),
                description=obj.get("description", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed experiment spec: {exc!r}") from None
        spec.validate()
        return spec

    def validate(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise ConfigError("spec needs a nonempty name")
        if not self.seeds:
            raise ConfigError(f"spec {self.name!r} has no seeds")
        for s in self.seeds:
            if not isinstance(s, int) or isinstance(s, bool) or not 0 <= s < U64:
                raise ConfigError(f"seed {s!r} is not a 64-bit unsigned integer")
        kind = self.generator.get("kind")
        if kind not in GENERATORS:
            raise ConfigError(f"unknown generator {kind!r}")
        for step in self.pipeline:
            if step.get("op") not in OPERATIONS:
                raise ConfigError(f"unknown operation {step.get('op')!r}")
        for c in self.checks:
            if c not in CHECKS:
                raise ConfigError(f"unknown check {c!r}")


def load_spec(path: str | Path) -> ExperimentSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    return ExperimentSpec.from_json(obj)


def builtin_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".json"))


def builtin_spec(name: str) -> ExperimentSpec:
    res = resources.files(__name__).joinpath(f"{name}.json")
    if not res.is_file():
        raise ConfigError(f"no built-in experiment {name!r}; have {builtin_names()}")
    return ExperimentSpec.from_json(json.loads(res.read_text()))


# --- generators: (params, seed) -> (state, inputs) ------------------------------


def _gen_random_graph(params, seed):
    rng = SplitMix64(seed)
    n = rng.randint(params.get("n_min", 1), params["n_max"])
    p = Fraction(rng.choice(params["p"]))
    gseed = rng.next_u64()
    g = random_graph(n, p, gseed)
    return {"graph": g}, {"n": n, "p": str(p), "graph_seed": gseed, "graph": graph_to_json(g)}


def _gen_path_system(params, seed):
    sys = random_path_system(seed, params.get("max_pieces", 5), params.get("max_paths", 40), params.get("max_len", 4))
    inputs = {
        "host": graph_to_json(sys.host),
        "pieces": [sorted(p.vertices) for p in sys.pieces],
        "paths": [list(p) for p in sys.paths],
    }
    return {"system": sys}, inputs


def _gen_subdivided_wall(params, seed):
    k = params["k"]
    w0, coords = wall(required_width(k), k)
    lengths = random_lengths(w0, params.get("max_sub", 3), seed)
    host, record = subdivide(w0, lengths)
    w = import_wall_subdivision(host, coords, record)
    return {"wall": w}, {"k": k, "lengths": [[u, v, ell] for (u, v), ell in sorted(lengths.items())]}


def _instance(params, seed):
    items = params["instances"]
    if not 0 <= seed < len(items):
        raise ConfigError(f"seed {seed} does not index one of {len(items)} instances")
    return items[seed]


def _gen_family(params, seed):
    inst = _instance(params, seed)
    g = family(inst["family"], *inst["sizes"])
    return {"graph": g, "instance": inst}, {"instance": inst, "graph": graph_to_json(g)}


def _gen_minor_host(params, seed):
    """Random hosts drawn from the seed's stream until one has a clique minor of a listed order."""
    rng = SplitMix64(seed)
    for attempt in range(params.get("attempts", 100)):
        n = rng.randint(params.get("n_min", 5), params["n_max"])
        p = Fraction(rng.choice(params["p"]))
        gseed = rng.next_u64()
        g = random_graph(n, p, gseed)
        for t in sorted(params["orders"], reverse=True):
            model = find_minor_model(g, complete(t), cap=params.get("cap", 12))
            if model is not None:
                inputs = {"attempt": attempt, "n": n, "p": str(p), "graph_seed": gseed, "t": t, "graph": graph_to_json(g)}
                return {"graph": g, "model": model}, inputs
    raise RuntimeError(f"seed {seed}: no host with a clique minor after {params.get('attempts', 100)} attempts")


def _gen_shallow(params, seed):
    inst = _instance(params, seed)
    host = family(*inst["host"])
    pattern = family(*inst["pattern"])
    model = ShallowModel(model_from_branch_sets(host, pattern, inst["branch_sets"]), inst["r"])
    return {"graph": host, "shallow": model}, {"instance": inst}


GENERATORS: dict[str, Callable] = {
    "random_graph": _gen_random_graph,
    "random_path_system": _gen_path_system,
    "subdivided_wall": _gen_subdivided_wall,
    "family": _gen_family,
    "minor_host": _gen_minor_host,
    "shallow_instance": _gen_shallow,
}


# --- operations: (state, params) -> None, writing state and state["out"] -------


def _op_half_cut(st, _):
    g = st["graph"]
    r = half_cut(g)
    st.update(result=r, bipartite=(r.subgraph, r.colouring), kept=len(r.selected), total=g.m)
    st["out"].update(m=g.m, kept=len(r.selected))


def _op_select_paths(st, _):
    sys = st["system"]
    r = select_paths(sys)
    st.update(result=r, bipartite=(r.subgraph, r.colouring), kept=len(r.selected), total=len(sys.paths))
    st["out"].update(paths=len(sys.paths), selected=len(r.selected), switch_log=list(r.switch_log))


def _op_wall_extract(st, _):
    ex = extract_bipartite_wall(st["wall"])
    st.update(extraction=ex, bipartite=(ex.subgraph, ex.colouring))
    st["out"].update(A_sizes=[len(a) for a in ex.index_sets], columns=list(ex.columns))


def _op_wall_verify(st, _):
    ex, k = st["extraction"], st["wall"].k
    coords = verify_wall_subdivision(ex.subgraph, k, 2 * k)
    st["verified"] = not hasattr(coords, "reason")
    st["out"]["verified"] = st["verified"]
    if not st["verified"]:
        st["out"]["mismatch"] = coords.reason


def _width_op(solver, validator):
    def op(st, params):
        value, witness = solver(st["graph"], cap=params.get("cap"))
        st["value"] = value
        st["witness_problems"] = validator(st["graph"], witness)
        st["out"].update(value=value)

    return op


def _op_c_param(st, params):
    a, b, c = c_param(st["graph"], cap=params.get("cap"))
    st["value"] = c
    st["out"].update(a=a, b=b, c=c)


def _op_max_c_bipartite_subgraphs(st, params):
    """Largest ``c`` over every edge subset of the graph that is bipartite."""
    g = st["graph"]
    best = 0
    count = 0
    for size in range(g.m + 1):
        for sub in combinations(g.edges, size):
            h = Graph(g.n, sub)
            if isinstance(two_colour(h), TwoColouring):
                count += 1
                best = max(best, c_param(h, cap=params.get("cap")).c)
    st["value"] = best
    st["out"].update(bipartite_subgraphs=count, max_c=best)


def _op_bipartize_minor(st, _):
    m = prune_model(st["model"])
    r, h2 = bipartize_minor(m)
    st.update(pruned=m, result=r, h2=h2, bipartite=(r.subgraph, r.colouring), kept=h2.m, total=m.pattern.m)
    st["out"].update(t=m.pattern.n, pattern_edges=m.pattern.m, kept_edges=h2.m)


def _op_recontract(st, _):
    m = st.get("pruned") or st["shallow"].model
    again = contract(st["result"].subgraph, m.branch_sets)
    st["recontracted"] = again
    st["out"]["recontracted_edges"] = again.m


def _op_minor_check(st, params):
    g_hat, _ = st["result"].subgraph.to_graph()
    st["pattern_is_minor"] = minor_test(g_hat, st["h2"], cap=params.get("cap", 20)) is not None
    st["out"]["pattern_is_minor"] = st["pattern_is_minor"]


def _op_bipartize_shallow(st, _):
    m = prune_shallow(st["shallow"])
    r, h2, certs = bipartize_shallow(m)
    st.update(shallow=m, result=r, h2=h2, certificates=certs, bipartite=(r.subgraph, r.colouring))
    st.update(kept=h2.m, total=m.model.pattern.m)
    st["out"].update(r=m.r, kept_edges=h2.m, pattern_edges=m.model.pattern.m)
    st["out"]["certificates"] = [[c.branch, c.centre, c.radius] for c in certs]


OPERATIONS: dict[str, Callable] = {
    "half_cut": _op_half_cut,
    "select_paths": _op_select_paths,
    "wall_extract": _op_wall_extract,
    "wall_verify": _op_wall_verify,
    "treewidth": _width_op(treewidth_exact, validate_decomposition),
    "pathwidth": _width_op(pathwidth_exact, validate_decomposition),
    "treedepth": _width_op(treedepth_exact, validate_elim_forest),
    "c_param": _op_c_param,
    "max_c_bipartite_subgraphs": _op_max_c_bipartite_subgraphs,
    "bipartize_minor": _op_bipartize_minor,
    "recontract": _op_recontract,
    "minor_check": _op_minor_check,
    "bipartize_shallow": _op_bipartize_shallow,
}


# --- checks: state -> (ok, slack or None) ---------------------------------------


def _check_bipartite(st):
    sub, col = st["bipartite"]
    return isinstance(two_colour(sub), TwoColouring) and col.is_proper(sub.edges), None


def _check_half(st):
    slack = 2 * st["kept"] - st["total"]
    return slack >= 0, slack


def _check_steps(st):
    slack = min((2 * s.kept - s.new_paths for s in st["result"].steps), default=0)
    return slack >= 0, slack


def _check_a_bounds(st):
    k = st["wall"].k
    sets = st["extraction"].index_sets
    nested = all(set(b) <= set(a) for a, b in zip(sets, sets[1:]))
    slack = min(len(a) - k * 2 ** (k - j) for j, a in enumerate(sets, start=1))
    return nested and slack >= 0 and len(sets) == k, slack


def _check_expected(st):
    inst = st["instance"]
    value, want = st["value"], inst["expect"]
    rel = inst.get("relation", "eq")
    ok = {"eq": value == want, "ge": value >= want, "le": value <= want}[rel]
    return ok, value - want


def _check_recontract(st):
    return st["recontracted"] == st["h2"], None


def _check_radius(st):
    """Radius of every output branch tree, recomputed by BFS from its certificate centre."""
    m, r = st["shallow"].model, st["shallow"].r
    worst = 0
    for cert, b in zip(st["certificates"], m.branch_sets):
        dist = bfs_distances(b.adjacency(), cert.centre)
        if set(dist) != set(b.vertices):
            return False, None
        worst = max(worst, max(dist.values()))
    return worst <= r, r - worst


CHECKS: dict[str, Callable] = {
    "bipartite_certified": _check_bipartite,
    "half_bound": _check_half,
    "step_bound": _check_steps,
    "a_bounds": _check_a_bounds,
    "wall_verified": lambda st: (st["verified"], None),
    "expected_value": _check_expected,
    "witness_valid": lambda st: (not st["witness_problems"], None),
    "recontract_matches": _check_recontract,
    "pattern_is_minor": lambda st: (st["pattern_is_minor"], None),
    "radius_certified": _check_radius,
}


# --- running --------------------------------------------------------------------


def digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def run_seed(spec: ExperimentSpec, seed: int) -> dict:
    start = time.perf_counter()
    state, inputs = GENERATORS[spec.generator["kind"]](spec.generator, seed)
    state["out"] = {}
    for step in spec.pipeline:
        OPERATIONS[step["op"]](state, step)
    checks, slack = {}, {}
    for name in spec.checks:
        try:
            ok, s = CHECKS[name](state)
        except KeyError as exc:
            raise ConfigError(f"check {name!r} needs {exc} which no pipeline step produced") from None
        checks[name] = bool(ok)
        if s is not None:
            slack[name] = s
    return {
        "seed": seed,
        "inputs_digest": digest(inputs),
        "outputs": state["out"],
        "checks": checks,
        "slack": slack,
        "passed": all(checks.values()),
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }


@dataclass
class RunReport:
    name: str
    records: list[dict]

    @property
    def pass_count(self) -> int:
        return sum(r["passed"] for r in self.records)

    @property
    def fail_count(self) -> int:
        return len(self.records) - self.pass_count

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def slack_stats(self) -> dict:
        by_check: dict[str, list] = {}
        for r in self.records:
            for name, s in r["slack"].items():
                by_check.setdefault(name, []).append(s)
        return {
            name: {"min": min(v), "max": max(v), "mean": math.fsum(v) / len(v)} for name, v in sorted(by_check.items())
        }

    def to_json(self, timings: bool = True) -> dict:
        records = self.records if timings else [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in self.records]
        body = {
            "name": self.name,
            "records": records,
            "aggregate": {"pass": self.pass_count, "fail": self.fail_count, "slack": self.slack_stats()},
        }
        body["digest"] = self.digest()
        return body

    def digest(self) -> str:
        stripped = [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in self.records]
        return digest({"name": self.name, "records": stripped})


def run_experiment(spec: ExperimentSpec, jobs: int = 1) -> RunReport:
    """Run every seed; records come back sorted by seed whatever ``jobs`` is."""
    spec.validate()
    seeds = sorted(spec.seeds)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run_seed, [spec] * len(seeds), seeds))
    else:
        records = [run_seed(spec, s) for s in seeds]
    return RunReport(spec.name, records)
