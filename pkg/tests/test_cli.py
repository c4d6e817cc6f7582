import io
import json
import subprocess
import sys

import pytest

from corpus import ACCEPT_266, ACCEPT_2244, KNOT_A, REJECT_266, REJECT_2244, zeroed
from veerflow.cli import FORMAT_ENV, run
from veerflow.fatgraph import dumbbell_pants, hexagon_decomposition


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = run(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_validate_ok():
    code, out, _ = call("validate", KNOT_A)
    data = json.loads(out)
    assert code == 0
    assert data["taut"] and data["veering"] and data["tets"] == 6


def test_validate_failure_goes_to_stderr():
    code, out, err = call("validate", zeroed(KNOT_A))
    assert code == 1
    assert "angle sum" in err
    assert json.loads(out)["taut"] is False


def test_bad_signature_is_a_validation_error():
    code, _, err = call("validate", "g!!_1")
    assert code == 1 and "offset" in err


def test_montesinos():
    code, out, _ = call("montesinos", "--p", "2,3,7")
    data = json.loads(out)
    assert code == 0 and (data["tets"], data["blue"], data["red"]) == (3, 2, 1)
    code, _, err = call("montesinos", "--p", "2,3,6")
    assert code == 1 and "not negative" in err


def test_output_is_sorted_and_deterministic():
    a = call("cusps", ACCEPT_266)[1]
    b = call("cusps", ACCEPT_266)[1]
    assert a == b
    keys = list(json.loads(a))
    assert keys == sorted(keys)


def test_flowgraph_formats():
    code, out, _ = call("flowgraph", KNOT_A, "--reduced")
    data = json.loads(out)
    assert code == 0 and len(data["edges"]) <= 18 and "removed_cycles" in data
    code, out, _ = call("flowgraph", KNOT_A, "--format", "dot")
    assert out.startswith("digraph flow {") and out.count("->") == 18


def test_format_from_environment(monkeypatch):
    monkeypatch.setenv(FORMAT_ENV, "text")
    code, out, _ = call("montesinos", "--p", "2,3,7")
    assert code == 0 and "tets: 3" in out


def test_census_match_from_stdin():
    text = "\n".join([ACCEPT_266, ACCEPT_2244, REJECT_266, REJECT_2244, "junk"]) + "\n"
    code, out, err = call("census-match", "--census", "-", "--p", "2,6,6", "--h1-rank", "3", stdin=text)
    data = json.loads(out)
    assert code == 0
    assert data["selected"] == [ACCEPT_266]
    assert data["malformed"][0]["line"] == 5 and "line 5" in err


def test_census_missing_file_is_io_error(tmp_path):
    code, _, err = call("census-match", "--census", str(tmp_path / "nope"), "--p", "2,6,6", "--h1-rank", "3")
    assert code == 2 and "error" in err


@pytest.fixture
def fatgraph_file(tmp_path):
    code, out, _ = call("hexagons", "--genus", "2", "--pants", "dumbbell")
    assert code == 0
    path = tmp_path / "g2.json"
    path.write_text(out)
    assert json.loads(out) == hexagon_decomposition(2, dumbbell_pants()).to_json()
    return str(path)


def test_geodesic(fatgraph_file):
    code, out, err = call("geodesic", "--fatgraph", fatgraph_file, "--reduced")
    data = json.loads(out)
    assert code == 0 and len(data["vertices"]) == 72 and len(data["edges"]) == 216
    assert data["removed_cycles"] == []
    assert "parallel" in err
    code, out, _ = call("geodesic", "--fatgraph", fatgraph_file, "--format", "dot")
    assert out.count("->") == 216


def test_geodesic_half(fatgraph_file):
    code, out, _ = call("geodesic", "--fatgraph", fatgraph_file, "--half", "3,6")
    assert code == 0 and len(json.loads(out)["vertices"]) == 30
    code, _, err = call("geodesic", "--fatgraph", fatgraph_file, "--half", "3")
    assert code == 1 and "whole curves" in err


def test_geodesic_bad_fatgraph(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertices": [{"slots": [0, 1, 2, 3]}], "pairing": [[0, 1], [2, 3]]}))
    code, _, err = call("geodesic", "--fatgraph", str(path))
    assert code == 1 and "region" in err
    code, _, _ = call("geodesic", "--fatgraph", str(tmp_path / "missing.json"))
    assert code == 2


def test_cycles(fatgraph_file):
    code, out, _ = call("cycles", KNOT_A, "--max-len", "4")
    data = json.loads(out)
    assert code == 0 and data["count"] == len(data["cycles"])
    code, out, _ = call("cycles", "--fatgraph", fatgraph_file, "--max-len", "3")
    assert code == 0 and json.loads(out)["max_len"] == 3
    code, _, err = call("cycles", "--max-len", "3")
    assert code == 1


def test_unknown_flag_is_rejected():
    code, _, _ = call("validate", KNOT_A, "--frobnicate")
    assert code == 2


def test_every_subcommand_has_help():
    for cmd in ["validate", "flowgraph", "cusps", "montesinos", "census-match", "geodesic", "cycles", "hexagons"]:
        code, _, _ = call(cmd, "--help")
        assert code == 0


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "veerflow", "montesinos", "--p", "2,6,6"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["tets"] == 14
