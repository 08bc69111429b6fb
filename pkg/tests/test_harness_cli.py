import json
import subprocess
import sys

import pytest

import oracles
from onesided.cli import main
from onesided.harness import emit_report, read_tsv_table, run_scenario
from onesided.specs import FIXTURES, SpecError, load_category_spec, parse_category

A3 = str(FIXTURES / "a3.json")


def a3_data():
    return json.loads((FIXTURES / "a3.json").read_text())


def test_shipped_category_loads():
    spec = load_category_spec("a3.json")
    assert spec.indecomposables == ("S1", "P2", "P3", "S2", "I2", "S3")
    assert spec.percolating is not None and spec.percolating.is_serre
    for name in spec.indecomposables:
        assert spec.reps[name].dims == oracles.dims(name)


def test_broken_naturality_names_the_arrow():
    data = a3_data()
    data["morphisms"]["p2_to_s2"] = {"src": "P2", "dst": "P2", "blocks": {"1": [["0"]], "2": [["1"]]}}
    with pytest.raises(SpecError, match="'a'"):
        parse_category(data)


def test_bad_matrix_shape_reported():
    data = a3_data()
    data["reps"]["P2"]["maps"]["a"] = [["1", "0"]]
    with pytest.raises(SpecError, match="P2"):
        parse_category(data)


def test_unknown_conflation_kind():
    data = a3_data()
    data["conflations"] = {"kind": "Everything"}
    with pytest.raises(SpecError, match="unknown kind"):
        parse_category(data)


def test_golden_tables_match_oracles():
    dhom = read_tsv_table(FIXTURES / "golden" / "a3-dhom.tsv")
    assert [tuple(r) for r in dhom.rows] == [tuple(r) for r in oracles.dhom_rows()]
    qhom = read_tsv_table(FIXTURES / "golden" / "a3-qhom-serre1.tsv")
    assert [tuple(r) for r in qhom.rows] == [tuple(r) for r in oracles.qhom_rows()]


@pytest.mark.parametrize("name", ["example-A3-restricted.json", "serre-S1-localization.json", "empty.json"])
def test_shipped_scenarios_pass(name):
    report = run_scenario(name)
    assert report.passed, [r for r in report.results if not r.passed]


def test_reports_are_reproducible():
    first = emit_report(run_scenario("serre-S1-localization.json"), "json")
    second = emit_report(run_scenario("serre-S1-localization.json"), "json")
    assert first == second
    assert b"timings" not in first


def test_failing_scenario_exits_one(tmp_path, capsys):
    scenario = {"name": "wrong", "category": A3,
                "assertions": [{"op": "ext_dim", "x": "S3", "y": "S2", "n": 1, "expect": 0}]}
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps(scenario))
    assert main(["run-scenario", str(path)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_unknown_op_is_an_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"name": "bad", "category": A3, "assertions": [{"op": "solve_everything"}]}))
    assert main(["run-scenario", str(path)]) == 2
    assert "unknown op" in capsys.readouterr().err


def test_missing_file_and_malformed_json(tmp_path, capsys):
    assert main(["percolate", "--category", str(tmp_path / "nope.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"vertices": [1,\n')
    assert main(["dhom", "--category", str(broken)]) == 2
    assert f"{broken}:" in capsys.readouterr().err


def test_dhom_tsv_output_equals_golden(capsys):
    assert main(["--format", "tsv", "dhom", "--category", "a3.json"]) == 0
    out = capsys.readouterr().out
    golden = (FIXTURES / "golden" / "a3-dhom.tsv").read_text()
    assert out.split("\n", 1)[1].strip() == golden.strip()


def test_global_flags_after_verb(capsys):
    assert main(["qhom", "--category", "a3.json", "--format", "json", "--seed", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["seed"] == 3


@pytest.mark.parametrize("argv", [
    ["check-axioms", "--category", "a3.json", "--axiom", "R3"],
    ["percolate", "--category", "a3.json"],
    ["localize", "--category", "a3.json"],
    ["verdier-probe", "--category", "a3.json"],
    ["wic", "--generators", "k4-wic.json"],
    ["hull-check", "--class", "a3.json", "--inflation", "iota", "--deflation", "pi"],
])
def test_verbs_run(argv, capsys):
    assert main(argv) == 0
    assert capsys.readouterr().out


def test_hull_check_needs_a_sequence(capsys):
    assert main(["hull-check", "--class", "a3.json"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "onesided", "run-scenario", "empty.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
