import json

import pytest

from nonassoc.cli import main
from nonassoc.builtins import NAMES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    assert run(capsys, "eval", "--algebra", "octonion", "comm(e1,e2)") == (0, "2*e3\n", "")


def test_eval_warns_on_chains(capsys):
    code, out, err = run(capsys, "eval", "e1*e2*e4")
    assert code == 0 and out == "-e5\n" and "grouping" in err


@pytest.mark.parametrize("argv, code, msg", [
    (["eval", "e1 ** e2"], 2, "offset 3"),
    (["eval", "--algebra", "octonion", "eps1"], 2, "eps1"),
    (["tables", "nosuch"], 2, ""),
    (["frobnicate"], 2, ""),
])
def test_usage_errors(capsys, argv, code, msg):
    got, out, err = run(capsys, *argv)
    assert got == code and out == ""
    assert msg in err


def test_io_errors(capsys, tmp_path):
    code, _, err = run(capsys, "load-algebra", str(tmp_path / "missing.json"))
    assert code == 3 and "cannot read" in err
    code, _, err = run(capsys, "export-algebra", "octonion", str(tmp_path / "no" / "dir.json"))
    assert code == 3


def test_malformed_algebra_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "x"}', encoding="utf-8")
    code, _, err = run(capsys, "load-algebra", str(path))
    assert code == 2 and "missing field" in err


@pytest.mark.parametrize("name", NAMES)
def test_export_load_round_trip(capsys, tmp_path, name):
    path = tmp_path / f"{name}.json"
    assert run(capsys, "export-algebra", name, str(path))[0] == 0
    _, table, _ = run(capsys, "tables", name, "--format", "json")
    code, loaded, _ = run(capsys, "load-algebra", str(path), "--format", "json")
    assert code == 0 and loaded == table
    again = tmp_path / "again.json"
    from nonassoc.algebra import load_algebra

    again.write_bytes(load_algebra(path.read_text(encoding="utf-8")).to_json().encode("utf-8"))
    assert again.read_bytes() == path.read_bytes()


def test_tables_text(capsys):
    code, out, _ = run(capsys, "tables", "octonion")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 10
    assert lines[0].split()[2:] == ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"]


def test_json_outputs_are_sorted_and_terminated(capsys):
    _, out, _ = run(capsys, "tables", "sedenion", "--format", "json")
    assert out.endswith("\n") and list(json.loads(out)) == sorted(json.loads(out))
    _, out, _ = run(capsys, "spectrum", "--grid", "400", "--no-timing")
    doc = json.loads(out)
    assert out.endswith("\n") and list(doc) == sorted(doc) and "elapsed_ms" not in doc


def test_spectrum(capsys, tmp_path):
    out_path = tmp_path / "s.json"
    code, out, _ = run(capsys, "spectrum", "--superpotential", "quadratic", "--domain", "-10", "10",
                       "--grid", "2000", "--levels", "6", "--tol", "1e-3", "--out", str(out_path))
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    assert code == 0 and out == "" and doc["status"] == "pass" and doc["pairing_kind"] == "plus_ground_unpaired"
    code, _, err = run(capsys, "spectrum", "--grid", "2")
    assert code == 2 and "N >= 3" in err


def test_verify_example2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "example2", "--no-timing")
    doc = json.loads(out)
    assert code == 0 and doc["all_expectations_met"]
    assert doc["checks"][0]["report"]["cases_checked"] == 27


def test_verify_example1_records_expected_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "example1", "--no-timing")
    doc = json.loads(out)
    assert code == 0
    by_name = {c["name"]: c for c in doc["checks"]}
    assert by_name["example1.hamilton_printed"]["expected"] == "fail"
    assert by_name["example1.hamilton_printed"]["met"]
    assert by_name["example1.hamilton_h1h2"]["report"]["status"] == "pass"


def test_verify_all_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--suite", "all", "--no-timing")
    code2, out2, _ = run(capsys, "verify", "--suite", "all", "--no-timing")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "elapsed_ms" not in out1
