"""Command-line surface: documents in, one JSON line out, honest exit codes."""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

import posp


def fixture_file(name: str) -> str:
    return str(posp.fixture_path(name))


def run_cli(*args: str, env_extra: dict | None = None) -> subprocess.CompletedProcess:
    env = os.environ.copy()
    env.update(env_extra or {})
    return subprocess.run(
        [sys.executable, "-m", "posp", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def write_doc(tmp_path, doc, name="instance.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


# ---------------------------------------------------------------------------
# Parsing.


ALL_FIXTURES = [
    "nonsimple_witness.json",
    "improving_loop.json",
    "dependent_extension.json",
    "subset_catchup.json",
    "vector_demo.json",
    "bottleneck_demo.json",
    "interval_demo.json",
    "fifo_demo.json",
    "wcspr_demo.json",
    "evsp_demo.json",
    "tourist_demo.json",
    "product_demo.json",
]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_every_bundled_document_parses(name):
    inst = posp.parse_instance(json.loads(posp.fixture_path(name).read_text()))
    assert inst.vertex_count >= 2
    assert inst.space.update is not None


def minimal_doc(**overrides):
    doc = {
        "format_version": 1,
        "name": "tiny",
        "graph": {"vertex_count": 2, "arcs": [{"tail": 0, "head": 1, "payload": [1]}]},
        "source": 0,
        "weight_space": {"kind": "mosp", "params": {"dimension": 1}},
    }
    doc.update(overrides)
    return doc


def test_parse_rejects_wrong_format_version():
    with pytest.raises(posp.ValidationError, match="format version"):
        posp.parse_instance(minimal_doc(format_version=2))


def test_parse_rejects_missing_fields_with_a_path():
    doc = minimal_doc()
    del doc["graph"]["vertex_count"]
    with pytest.raises(posp.ValidationError, match="graph.vertex_count"):
        posp.parse_instance(doc)


def test_parse_rejects_unknown_space_kind():
    with pytest.raises(posp.ValidationError, match="kind"):
        posp.parse_instance(minimal_doc(weight_space={"kind": "vibes", "params": {}}))


def test_cli_reports_parallel_arcs(tmp_path):
    doc = minimal_doc()
    doc["graph"]["arcs"].append({"tail": 0, "head": 1, "payload": [2]})
    r = run_cli("solve", write_doc(tmp_path, doc))
    assert r.returncode == 2
    assert "parallel" in r.stderr


def test_cli_reports_unreadable_and_invalid_files(tmp_path):
    r = run_cli("solve", str(tmp_path / "missing.json"))
    assert r.returncode == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = run_cli("solve", str(bad))
    assert r.returncode == 2
    assert "JSON" in r.stderr


# ---------------------------------------------------------------------------
# solve.


def test_solve_auto_picks_the_fixpoint_solver_without_an_extension():
    r = run_cli("solve", fixture_file("nonsimple_witness.json"))
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["algorithm"] == "bellman"
    assert doc["final"] is True
    entries = doc["frontiers"][1]["entries"]
    assert [(e["weight"], e["path"]) for e in entries] == [
        ("B", [0, 1, 2, 1]),
        ("C", [0, 1]),
    ]


def test_solve_auto_prefers_label_setting_when_justified():
    r = run_cli("solve", fixture_file("vector_demo.json"))
    assert r.returncode == 0
    assert json.loads(r.stdout)["algorithm"] == "mda"


def test_solve_refuses_an_unjustified_algorithm_without_force():
    r = run_cli("solve", fixture_file("nonsimple_witness.json"), "--algorithm", "mda")
    assert r.returncode == 3
    assert "--force" in r.stderr
    assert r.stdout == ""


def test_solve_forced_mda_without_a_key_still_fails():
    r = run_cli(
        "solve", fixture_file("nonsimple_witness.json"), "--algorithm", "mda", "--force"
    )
    assert r.returncode == 3
    assert "linear extension" in r.stderr


def test_solve_guard_hit_is_visible_and_nonfinal():
    r = run_cli("solve", fixture_file("improving_loop.json"), "--max-iterations", "2")
    assert r.returncode == 4
    doc = json.loads(r.stdout)
    assert doc["status"] == "iteration-guard-hit"
    assert doc["final"] is False
    assert len(doc["iteration_sizes"]) == 2


def test_solve_variant_max_collects_every_efficient_path():
    r = run_cli("solve", fixture_file("tourist_demo.json"), "--variant", "max")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    ref = run_cli("oracle", fixture_file("tourist_demo.json"), "--variant", "max", "--max-len", "3")
    ref_doc = json.loads(ref.stdout)
    got = [sorted(json.dumps(e) for e in fr["entries"]) for fr in doc["frontiers"]]
    want = [sorted(json.dumps(e) for e in fr["entries"]) for fr in ref_doc["frontiers"]]
    assert got == want


def test_solve_drop_infeasible_filters_stranded_labels():
    r = run_cli("solve", fixture_file("evsp_demo.json"), "--drop-infeasible")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    for fr in doc["frontiers"]:
        for e in fr["entries"]:
            assert e["feasible"] is True


def test_solve_monotonicity_assertion_failure_exits_five(tmp_path):
    doc = {
        "format_version": 1,
        "name": "replenish-loop",
        "graph": {
            "vertex_count": 2,
            "arcs": [
                {"tail": 0, "head": 1, "payload": {"w": 1, "r": 9}},
                {"tail": 1, "head": 1, "payload": {"w": 0, "r": 2, "replenish": True}},
            ],
        },
        "source": 0,
        "weight_space": {"kind": "wcspr", "params": {"limit": 20}},
    }
    path = write_doc(tmp_path, doc)
    r = run_cli("solve", path, "--algorithm", "mda")
    assert r.returncode == 3  # no table row supports it
    r = run_cli("solve", path, "--algorithm", "mda", "--force")
    assert r.returncode == 5
    assert "monotonicity" in r.stderr


# ---------------------------------------------------------------------------
# check.


def test_check_exit_zero_when_declared_properties_survive():
    r = run_cli("check", fixture_file("subset_catchup.json"), "--depth", "5")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["violated_declared"] == []
    names = [rep["condition"] for rep in doc["reports"]]
    assert "linear-extension" in names  # the space ships a key
    by_name = {rep["condition"]: rep for rep in doc["reports"]}
    assert by_name["independent"]["verdict"] == "violated"
    assert by_name["weakly-independent"]["verdict"] == "holds-to-depth"


def test_check_flags_a_refuted_declaration_through_the_closure(tmp_path):
    doc = json.loads(posp.fixture_path("dependent_extension.json").read_text())
    doc["declared_properties"] = ["independent"]
    r = run_cli("check", write_doc(tmp_path, doc), "--depth", "5")
    assert r.returncode == 5
    out = json.loads(r.stdout)
    # Declaring the strict property also stakes the weak one via implication.
    assert out["violated_declared"] == ["independent", "weakly-independent"]


def test_check_condition_filter_and_unknown_names(tmp_path):
    r = run_cli(
        "check", fixture_file("improving_loop.json"), "--conditions", "history-free"
    )
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert [rep["condition"] for rep in doc["reports"]] == ["history-free"]
    r = run_cli("check", fixture_file("improving_loop.json"), "--conditions", "nope")
    assert r.returncode == 2


def test_check_reports_improving_loop_violations_without_exit_five():
    # The violated conditions are not the declared ones, so the audit passes.
    r = run_cli("check", fixture_file("improving_loop.json"), "--depth", "6")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    by_name = {rep["condition"]: rep for rep in doc["reports"]}
    assert by_name["weakly-subpath-optimal"]["verdict"] == "violated"
    assert by_name["cycle-non-decreasing"]["verdict"] == "violated"
    assert by_name["linear-extension"]["verdict"] == "violated"
    assert by_name["weakly-independent"]["verdict"] == "holds-to-depth"


# ---------------------------------------------------------------------------
# oracle.


def test_oracle_agrees_with_solve_on_weights():
    s = json.loads(run_cli("solve", fixture_file("bottleneck_demo.json")).stdout)
    o = json.loads(
        run_cli("oracle", fixture_file("bottleneck_demo.json"), "--max-len", "4").stdout
    )
    for fs, fo in zip(s["frontiers"], o["frontiers"]):
        assert [e["weight"] for e in fs["entries"]] == [e["weight"] for e in fo["entries"]]


def test_oracle_budget_exhaustion_exits_two(tmp_path):
    doc = json.loads(posp.fixture_path("vector_demo.json").read_text())
    path = write_doc(tmp_path, doc)
    r = run_cli("oracle", path, "--max-len", "8", env_extra={"POSP_BUDGET": "3"})
    assert r.returncode == 2
    assert "budget" in r.stderr.lower()


# ---------------------------------------------------------------------------
# recommend.


def test_recommend_lists_variant_rows_with_satisfaction():
    r = run_cli("recommend", fixture_file("improving_loop.json"))
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert len(doc["rows"]) == 14  # the min-variant rows
    sat = [row["row"] for row in doc["rows"] if row["satisfied"]]
    assert sat == [1]
    assert doc["permitted"] == {"bellman": True, "mda": False}
    assert doc["selected"] == "bellman"


def test_recommend_max_variant_for_tourist():
    r = run_cli("recommend", fixture_file("tourist_demo.json"), "--variant", "max")
    doc = json.loads(r.stdout)
    sat = [row["row"] for row in doc["rows"] if row["satisfied"]]
    assert 20 in sat
    assert doc["permitted"]["mda"] is True
    assert doc["permitted"]["bellman"] is False
    assert doc["selected"] == "mda"


# ---------------------------------------------------------------------------
# bench.


def test_bench_kn_iterations_match_the_prediction():
    r = run_cli("bench", "--suite", "kn-worst-case", "--n", "4", "--m", "3")
    assert r.returncode == 0
    lines = [json.loads(line) for line in r.stdout.splitlines()]
    iteration_records = [l for l in lines if l["record"] == "iteration"]
    assert [l["nontrivial"] for l in iteration_records[:2]] == [4, 20]
    assert all(l["matches_prediction"] for l in iteration_records[:2])
    final = lines[-1]
    assert final["record"] == "final"
    assert final["sizes"] == [1, 1, 1, 1]
    assert "wall_time_s" in r.stderr


def test_bench_random_cross_checks_the_solvers():
    r = run_cli(
        "bench", "--suite", "random", "--structures", "mosp,interval", "--count", "2"
    )
    assert r.returncode == 0
    lines = [json.loads(line) for line in r.stdout.splitlines()]
    assert len(lines) == 4
    for line in lines:
        assert line["bellman"]["status"] == "converged"
        if line["mda"] is not None:
            assert line["agree"] is True


# ---------------------------------------------------------------------------
# Determinism: identical invocations produce identical bytes.


@pytest.mark.parametrize(
    "args",
    [
        ("solve", "vector_demo.json"),
        ("solve", "evsp_demo.json", "--variant", "max"),
        ("check", "improving_loop.json"),
        ("oracle", "wcspr_demo.json", "--max-len", "5"),
        ("recommend", "subset_catchup.json"),
    ],
)
def test_repeat_runs_are_byte_identical(args):
    cmd = [args[0], fixture_file(args[1]), *args[2:]]
    first = run_cli(*cmd)
    second = run_cli(*cmd)
    assert first.returncode == second.returncode
    assert first.stdout == second.stdout


def test_bench_stdout_is_byte_identical_across_runs():
    cmd = ("bench", "--suite", "random", "--structures", "subset", "--count", "2")
    assert run_cli(*cmd).stdout == run_cli(*cmd).stdout
    kn = ("bench", "--suite", "kn-worst-case", "--n", "3", "--m", "3")
    assert run_cli(*kn).stdout == run_cli(*kn).stdout
