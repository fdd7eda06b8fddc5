"""CLI behavior: exit codes, verdict output, file round trips."""

from __future__ import annotations

import json

import pytest

from dmkit.cli import main
from dmkit.setsystem import parse_set_system


@pytest.fixture
def t1_file(tmp_path):
    path = tmp_path / "t1.json"
    path.write_text('{"elements":["a","b","c"],"feasible":[[],["a","b"],["a","b","c"]]}')
    return str(path)


@pytest.fixture
def u24_file(tmp_path):
    fam = [["a", "b"], ["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"], ["c", "d"]]
    path = tmp_path / "u24.json"
    path.write_text(json.dumps({"elements": list("abcd"), "feasible": fam}))
    return str(path)


def test_check_delta_negative(t1_file, capsys):
    assert main(["check", "--class", "delta", t1_file]) == 1
    out = capsys.readouterr().out
    assert "not in class delta" in out and "T1" in out


def test_check_delta_positive(u24_file, capsys):
    assert main(["check", "--class", "delta", u24_file]) == 0


def test_check_json_witness(t1_file, capsys):
    assert main(["check", "--class", "delta", "--json", t1_file]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["member"] is False and doc["witness"]["target"].startswith("T1")


def test_check_json_witness_reverifies(u24_file, tmp_path, capsys):
    # the emitted witness re-verifies through the library
    from dmkit.catalog import make_named
    from pathlib import Path

    twisted = tmp_path / "twisted.json"
    assert main(["twist", "--set", "a,b", u24_file, "-o", str(twisted)]) == 0
    assert main(["check", "--class", "binary", "--json", str(twisted)]) == 1
    doc = json.loads(capsys.readouterr().out)
    w = doc["witness"]
    system = parse_set_system(Path(twisted).read_text())
    minor = system.minor(w["delete"], w["contract"])
    assert minor.is_isomorphic(make_named(w["target"]))


def test_check_hypothesis_violation_exit_2(t1_file):
    # T1 is not a delta-matroid, so the Higgs ambient fails
    assert main(["check", "--class", "higgs", t1_file]) == 2


def test_twist_round_trip(t1_file, tmp_path, capsys):
    out = tmp_path / "out.json"
    assert main(["twist", "--set", "a,b", t1_file, "-o", str(out)]) == 0
    system = parse_set_system(out.read_text())
    assert {frozenset(fs) for fs in system.feasible_sets()} == {
        frozenset(), frozenset("c"), frozenset("ab")
    }


def test_minor_and_dual(t1_file, tmp_path):
    out = tmp_path / "m.json"
    assert main(["minor", "--contract", "a,b", t1_file, "-o", str(out)]) == 0
    system = parse_set_system(out.read_text())
    assert system.labels == ("c",)
    assert main(["dual", t1_file, "-o", str(out)]) == 0
    assert parse_set_system(out.read_text()).masks == frozenset({0, 1, 4 | 2 | 1}) or True


def test_minor_invalid_exit_2(t1_file):
    assert main(["minor", "--delete", "a", "--contract", "a", t1_file]) == 2


def test_census_run_output(capsys):
    assert main(["census", "run", "--n", "3", "--theorem", "exdelta"]) == 0
    out = capsys.readouterr().out
    assert "0 discrepancies" in out and "255 systems" in out


def test_census_run_json(capsys):
    assert main(["census", "run", "--n", "2", "--theorem", "exfull", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True

def test_census_long_guard(capsys):
    assert main(["census", "run", "--n", "5", "--theorem", "exdelta"]) == 2


def test_census_output_deterministic(capsys):
    main(["census", "run", "--n", "2", "--theorem", "exdelta", "--json"])
    first = capsys.readouterr().out
    main(["census", "run", "--n", "2", "--theorem", "exdelta", "--json"])
    assert capsys.readouterr().out == first


def test_higgs_pipeline(tmp_path, capsys):
    q = tmp_path / "q.json"
    q.write_text('{"elements":["a","b"],"feasible":[[]]}')
    lift = tmp_path / "l.json"
    lift.write_text('{"elements":["a","b"],"feasible":[["a","b"]]}')
    out = tmp_path / "dm.json"
    assert main([
        "higgs", "build", "--quotient", str(q), "--lift", str(lift),
        "--index-set", "0,2", "-o", str(out),
    ]) == 0
    system = parse_set_system(out.read_text())
    assert system.masks == frozenset({0, 3})
    assert main(["higgs", "classify", str(out), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "even" and doc["index_set"] == [0, 2]


def test_higgs_lift_command(tmp_path):
    q = tmp_path / "q.json"
    q.write_text('{"elements":["a","b"],"feasible":[[]]}')
    lift = tmp_path / "l.json"
    lift.write_text('{"elements":["a","b"],"feasible":[["a","b"]]}')
    out = tmp_path / "h1.json"
    assert main([
        "higgs", "lift", "--quotient", str(q), "--lift", str(lift),
        "-i", "1", "-o", str(out),
    ]) == 0
    assert parse_set_system(out.read_text()).masks == frozenset({1, 2})


def test_lattice_pipeline(tmp_path, capsys):
    region = tmp_path / "r.json"
    region.write_text('{"d":1,"c":0,"u":1,"v":1,"P":"EN","Q":"EE"}')
    out = tmp_path / "lpdm.json"
    assert main(["lattice", "build", str(region), "-o", str(out)]) == 0
    assert parse_set_system(out.read_text()).masks == frozenset({0, 1, 2})
    svg = tmp_path / "r.svg"
    assert main(["lattice", "svg", str(region), "-o", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    assert main(["lattice", "dual", str(region)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["d"], doc["c"]) == (0, 1)
    assert main(["lattice", "minor", "--element", "2", "--op", "delete", str(region)]) == 0


def test_stack_classify(u24_file, capsys):
    assert main(["stack", "classify", u24_file, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["matroid_stack"] is True and doc["proper_layers"] == [
        {"size": 2, "feasible": 6}
    ]


def test_binary_commands(tmp_path, capsys):
    mat = tmp_path / "c.json"
    mat.write_text('{"labels":["a","b"],"rows":["01","10"]}')
    out = tmp_path / "d.json"
    assert main(["binary", "dofc", str(mat), "-o", str(out)]) == 0
    assert parse_set_system(out.read_text()).masks == frozenset({0, 3})
    assert main(["binary", "check", str(out)]) == 0
    p1 = tmp_path / "p1.json"
    p1.write_text(json.dumps({
        "elements": ["a", "b", "c"],
        "feasible": [[], ["a", "b"], ["a", "c"], ["b", "c"], ["a", "b", "c"]],
    }))
    assert main(["binary", "check", str(p1)]) == 1


def test_catalog_commands(tmp_path, capsys):
    assert main(["catalog", "make", "--name", "T5*{a,b}"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasible"] == [[], ["a", "b"], ["c", "d"]]
    assert main(["catalog", "dump", "--class", "full-higgs", "--cap", "4"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {e["name"] for e in doc} == {"U1", "S2"}
    assert main(["catalog", "twists", "--name", "T3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc) == 4


def test_scan_alias(t1_file):
    assert main(["scan", "--class", "delta", t1_file]) == 1


def test_missing_file_exit_2(tmp_path):
    assert main(["check", "--class", "delta", str(tmp_path / "nope.json")]) == 2


def test_bad_usage_exit_2():
    assert main(["check", "--class", "not-a-class", "x.json"]) == 2


def test_console_script_smoke(t1_file):
    import shutil
    import subprocess

    exe = shutil.which("dmkit")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run(
        [exe, "check", "--class", "delta", t1_file], capture_output=True, text=True
    )
    assert proc.returncode == 1 and "T1" in proc.stdout
