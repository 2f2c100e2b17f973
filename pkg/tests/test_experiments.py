import json

import pytest

from bipforge.errors import ConfigError
from bipforge.experiments import ExperimentSpec, builtin_names, builtin_spec, load_spec, run_experiment

SMALL = {
    "name": "small-half",
    "seeds": [5, 1, 3],
    "generator": {"kind": "random_graph", "n_min": 2, "n_max": 9, "p": ["1/2"]},
    "pipeline": ["half_cut"],
    "checks": ["bipartite_certified", "half_bound"],
}


def test_builtins_cover_each_criterion():
    names = set(builtin_names())
    assert {
        "erdos-half",
        "switch-lemma",
        "wall-k2",
        "wall-k3",
        "treewidth-anchors",
        "pathwidth-anchor",
        "treedepth-anchor",
        "minor-half",
        "shallow-radius",
        "c-counterexample",
        "c-bipartite-cycle",
    } <= names


@pytest.mark.parametrize(
    "bad, match",
    [
        ({**SMALL, "seeds": []}, "no seeds"),
        ({**SMALL, "pipeline": ["teleport"]}, "unknown operation"),
        ({**SMALL, "checks": ["vibes"]}, "unknown check"),
        ({**SMALL, "generator": {"kind": "nope"}}, "unknown generator"),
        ({**SMALL, "seeds": [-1]}, "64-bit"),
        ({**SMALL, "extra": 1}, "unknown spec fields"),
        ({k: v for k, v in SMALL.items() if k != "generator"}, "malformed"),
    ],
)
def test_config_errors_before_running(bad, match):
    with pytest.raises(ConfigError, match=match):
        ExperimentSpec.from_json(bad)


def test_records_sorted_and_digest_stable():
    spec = ExperimentSpec.from_json(SMALL)
    a, b = run_experiment(spec), run_experiment(spec)
    assert [r["seed"] for r in a.records] == [1, 3, 5]
    assert a.digest() == b.digest()
    assert a.to_json(timings=False) == b.to_json(timings=False)
    assert a.ok and a.pass_count == 3


def test_parallel_matches_serial():
    spec = ExperimentSpec.from_json(SMALL)
    assert run_experiment(spec, jobs=2).digest() == run_experiment(spec).digest()


def test_seed_range_and_load(tmp_path):
    obj = {**SMALL, "seeds": {"first": 10, "count": 4}}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(obj))
    spec = load_spec(path)
    assert spec.seeds == [10, 11, 12, 13]
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(ConfigError):
        load_spec(tmp_path / "bad.json")


def test_failing_check_is_reported():
    spec = builtin_spec("pathwidth-anchor")
    report = run_experiment(spec)
    assert not report.ok
    assert [r["seed"] for r in report.records if not r["passed"]] == [1]


@pytest.mark.parametrize("name", ["wall-k2", "treedepth-anchor", "shallow-radius", "c-counterexample", "minor-half"])
def test_builtin_passes(name):
    report = run_experiment(builtin_spec(name))
    assert report.ok, [r for r in report.records if not r["passed"]]


def test_unknown_builtin():
    with pytest.raises(ConfigError, match="no built-in"):
        builtin_spec("missing")
