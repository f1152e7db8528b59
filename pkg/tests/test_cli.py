"""Command-line behavior: outputs, exit codes, schemas, determinism."""

import json
import subprocess
import sys

import pytest

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

from champagne.cli import bundled_path, main
from champagne.graphs import Graph

requires_jsonschema = pytest.mark.skipif(
    jsonschema is None, reason="jsonschema not installed"
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def schema(name):
    from importlib import resources

    return json.loads(
        resources.files("champagne").joinpath("schemas", name).read_text("utf-8")
    )


# -- search -------------------------------------------------------------------


@requires_jsonschema
def test_search_r34(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, _, err = run_cli(
        capsys,
        "search", "--family", "r34", "--n", "9", "--jobs", "1",
        "--out", str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    jsonschema.validate(report, schema("search_report.schema.json"))
    assert report["verdict"] == {"kind": "empty-at-k", "k": 9}
    assert report["levels"][7] == {
        "k": 8, "count": 3,
        "expanded": report["levels"][7]["expanded"],
        "kept": report["levels"][7]["kept"],
        "seconds": report["levels"][7]["seconds"],
    }
    assert "level=9" in err  # progress lines on stderr


def test_search_writes_witnesses(capsys, tmp_path):
    g6_path = tmp_path / "out.g6"
    code, out, _ = run_cli(
        capsys,
        "search", "--family", "default", "--n", "4", "--jobs", "1",
        "--quiet", "--witnesses", str(g6_path),
    )
    assert code == 0
    lines = g6_path.read_text().splitlines()
    assert len(lines) == 9
    assert all(Graph.from_graph6(line).n == 4 for line in lines)
    report = json.loads(out)
    assert report["witnesses"]["count"] == 9


def test_search_family_file(capsys, tmp_path):
    fam_path = tmp_path / "fam.json"
    fam_path.write_text(json.dumps([
        {"pattern": "K3", "scope": "red"},
        {"pattern": "K3", "scope": "blue"},
    ]))
    code, out, _ = run_cli(
        capsys, "search", "--family", str(fam_path), "--n", "8",
        "--jobs", "1", "--quiet",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == {"kind": "empty-at-k", "k": 6}


def test_search_bad_family_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, _, err = run_cli(capsys, "search", "--family", str(bad), "--n", "4")
    assert code == 2
    assert "error" in err
    code, _, _ = run_cli(capsys, "search", "--family", "/nonexistent.json", "--n", "4")
    assert code == 2


def test_search_cap_exits_3(capsys, tmp_path):
    out_path = tmp_path / "partial.json"
    code, _, err = run_cli(
        capsys,
        "search", "--family", "default", "--n", "8", "--jobs", "1",
        "--quiet", "--cap", "10", "--out", str(out_path),
    )
    assert code == 3
    partial = json.loads(out_path.read_text())
    assert partial["verdict"]["kind"] == "cap-exceeded"


def test_search_jobs_env_override(capsys, monkeypatch):
    monkeypatch.setenv("RAMSEY_JOBS", "2")
    code, out, _ = run_cli(
        capsys, "search", "--family", "default", "--n", "5",
        "--jobs", "1", "--quiet",
    )
    assert code == 0
    assert json.loads(out)["jobs"] == 2


def test_search_deterministic_output_across_jobs(capsys):
    outs = []
    for jobs in ("1", "2"):
        code, out, _ = run_cli(
            capsys, "search", "--family", "default", "--n", "6",
            "--jobs", jobs, "--quiet", "--embed-witnesses",
        )
        assert code == 0
        report = json.loads(out)
        report.pop("jobs")
        for level in report["levels"]:
            level.pop("seconds")
        outs.append(json.dumps(report, sort_keys=True))
    assert outs[0] == outs[1]


# -- verify-signatures ----------------------------------------------------------


@requires_jsonschema
def test_verify_signatures(capsys, tmp_path):
    out_path = tmp_path / "sig.json"
    code, _, err = run_cli(
        capsys, "verify-signatures", "--trials", "5", "--seed", "1",
        "--out", str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    jsonschema.validate(report, schema("signature_report.schema.json"))
    assert report["passed"]
    assert [l["kind"] for l in report["lemmas"]] == [
        "cycle(5)", "cycle(7)", "cycle(9)", "h7",
    ]
    assert {c["name"] for c in report["catalog_checks"]} == {"C3", "C5", "C7", "H7"}
    assert "cycle(7): ok" in err


def test_verify_signatures_selftest_corruption(capsys):
    code, out, err = run_cli(
        capsys, "verify-signatures", "--trials", "2", "--selftest-corrupt",
    )
    assert code == 1
    report = json.loads(out)
    assert not report["passed"]
    assert "counterexample" in err


def test_verify_signatures_rejects_bad_trials(capsys):
    code, _, _ = run_cli(capsys, "verify-signatures", "--trials", "0")
    assert code == 2


# -- check-lines / gen-lower-bound ------------------------------------------------


@requires_jsonschema
def test_check_lines_bundled_config(capsys, tmp_path):
    out_path = tmp_path / "lines.json"
    code, _, _ = run_cli(
        capsys, "check-lines", bundled_path("three_lines.json"),
        "--out", str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    jsonschema.validate(report, schema("line_report.schema.json"))
    assert report["valid"]
    assert report["realization"]["passed"]
    assert report["chirality_graph6"] == Graph.from_edges(3, [(0, 2)]).to_graph6()


@requires_jsonschema
def test_check_lines_flags_parallel_pair(capsys, tmp_path):
    cfg = {
        "dim": 3,
        "lines": [
            {"base": [0, 0, 0], "dir": [1, 0, 0]},
            {"base": [0, 0, 1], "dir": [1, 0, 0]},
        ],
    }
    path = tmp_path / "parallel.json"
    path.write_text(json.dumps(cfg))
    code, out, err = run_cli(capsys, "check-lines", str(path))
    assert code == 1
    report = json.loads(out)
    jsonschema.validate(report, schema("line_report.schema.json"))
    assert not report["valid"]
    assert report["config"]["has_parallel"]
    assert "(0,1)" in err


def test_check_lines_parse_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("[this is not json")
    assert run_cli(capsys, "check-lines", str(path))[0] == 2
    assert run_cli(capsys, "check-lines", "/missing/file.json")[0] == 2


def test_check_lines_distance_failure(capsys, tmp_path):
    cfg = {
        "dim": 3,
        "lines": [
            {"base": [0, 0, 0], "dir": [1, 0, 0]},
            {"base": [0, 0, 2], "dir": [0, 1, 0]},
        ],
    }
    path = tmp_path / "far.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run_cli(capsys, "check-lines", str(path))
    assert code == 1
    assert not json.loads(out)["valid"]


def test_gen_lower_bound_round_trip(capsys, tmp_path, monkeypatch):
    code, out, _ = run_cli(capsys, "gen-lower-bound", "--dim", "4")
    assert code == 0
    cfg = json.loads(out)
    assert cfg["dim"] == 4 and len(cfg["lines"]) == 6

    # pipe the generated config into check-lines --distances-only via stdin
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(out))
    code, out2, _ = run_cli(capsys, "check-lines", "-", "--distances-only")
    assert code == 0
    report = json.loads(out2)
    assert report["mode"] == "distances-only"
    assert report["valid"]
    assert report["config"]["has_parallel"]  # parallel pairs allowed here


def test_gen_lower_bound_rejects_dim_2(capsys):
    assert run_cli(capsys, "gen-lower-bound", "--dim", "2")[0] == 2


def test_check_lines_full_mode_requires_r3(capsys, tmp_path, monkeypatch):
    import io

    buffer = io.StringIO()
    monkeypatch.setattr(sys, "stdout", buffer)
    assert main(["gen-lower-bound", "--dim", "5"]) == 0
    monkeypatch.undo()
    path = tmp_path / "r5.json"
    path.write_text(buffer.getvalue())
    code, _, err = run_cli(capsys, "check-lines", str(path))
    assert code == 1
    assert "distances-only" in err


def test_search_rejects_out_of_range_n(capsys):
    assert run_cli(capsys, "search", "--family", "default", "--n", "17")[0] == 2


# -- catalog ----------------------------------------------------------------------


def test_catalog_listing(capsys):
    code, out, _ = run_cli(capsys, "catalog")
    assert code == 0
    lines = {line.split()[0]: line for line in out.strip().splitlines()}
    assert set(lines) == {
        "K1", "K2", "K3", "K4", "K5", "K6", "K7", "K8", "K3,2",
        "C3", "C4", "C5", "C6", "C7",
        "H6", "H7", "K6-C5", "K6-H6", "K7-C5", "K7-H6", "K7-H7", "K8-H7",
    }
    h6 = lines["H6"]
    assert "edges={12,15,23,26,34,45,56}" in h6
    assert "graph6=EhdG" in h6
    h7 = lines["H7"]
    assert "edges={12,13,14,23,25,36,47,57,67}" in h7
    k7h7 = lines["K7-H7"]
    assert k7h7.count(",") == 11  # 12 edges
    for line in lines.values():
        assert "canonical=" in line and "graph6=" in line


# -- installed entry point ----------------------------------------------------------


def test_console_entry_point_pipe():
    gen = subprocess.run(
        [sys.executable, "-m", "champagne.cli", "gen-lower-bound", "--dim", "3"],
        capture_output=True, text=True, check=True,
    )
    check = subprocess.run(
        [sys.executable, "-m", "champagne.cli", "check-lines", "-", "--distances-only"],
        input=gen.stdout, capture_output=True, text=True,
    )
    assert check.returncode == 0
    assert json.loads(check.stdout)["valid"]
