import json

import pytest

import quasidiff as qd
from quasidiff.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_examples(capsys):
    code, out, _ = run(["list-examples"], capsys)
    assert code == 0
    for name in qd.EXAMPLE_NAMES:
        assert name in out


@pytest.mark.parametrize("name, horizon", [
    ("example-1", 40), ("example-2", 80), ("example-3", 60), ("example-4", 80),
])
def test_verify_bundled_examples_pass(name, horizon, capsys):
    code, out, _ = run(["verify", name, "--horizon", str(horizon)], capsys)
    assert code == 0
    assert "PASS" in out


def test_verify_perturbed_forcing_fails(capsys):
    code, out, _ = run(["verify", "example-1", "--horizon", "40", "--perturb-d", "1.01"], capsys)
    assert code == 1
    assert "FAIL" in out


def test_verify_file_document_equals_bundled(tmp_path, capsys):
    path = tmp_path / "eq.json"
    path.write_text(json.dumps(qd.example_document("example-3")))
    code_file, out_file, _ = run(
        ["verify", str(path), "--horizon", "30", "--closed-form", "geometric:-1,0.5"], capsys)
    code_name, out_name, _ = run(["verify", "example-3", "--horizon", "30"], capsys)
    assert code_file == code_name == 0
    # same document, same residual line
    assert out_file.splitlines()[2] == out_name.splitlines()[2]


def test_malformed_document_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{ this is not json")
    code, _, err = run(["verify", str(path), "--horizon", "20"], capsys)
    assert code == 2
    assert "error" in err


def test_missing_field_exits_2(tmp_path, capsys):
    doc = qd.example_document("example-3")
    del doc["tau"]
    path = tmp_path / "incomplete.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["verify", str(path), "--horizon", "20"], capsys)
    assert code == 2
    assert "tau" in err


def test_short_horizon_exits_2(capsys):
    code, _, err = run(["solve", "example-3", "--horizon", "4"], capsys)
    assert code == 2
    assert "at least 8" in err


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_solve_writes_csv_schema(tmp_path, capsys):
    csv_path = tmp_path / "t.csv"
    code, out, _ = run(["solve", "example-3", "--horizon", "60", "--csv", str(csv_path)], capsys)
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "n,x,z,y,w,t"
    first = lines[1].split(",")
    assert first[0] == "0"
    assert float(first[1]) == -1.0  # 17 significant digits round-trip
    # components are blank before the chain is defined, populated inside
    assert first[2] == ""
    row = dict(zip("n,x,z,y,w,t".split(","), lines[5].split(",")))
    assert row["z"] != "" and row["t"] != ""
    # the solved x column reproduces the closed form
    for line in lines[1:32]:
        cells = line.split(",")
        n, x = int(cells[0]), float(cells[1])
        assert x == pytest.approx(-(0.5 ** n), rel=1e-6)


def test_solve_overflow_is_success_with_warning(tmp_path, capsys):
    csv_path = tmp_path / "overflow.csv"
    out_path = tmp_path / "overflow.json"
    code, out, _ = run(["solve", "example-1", "--horizon", "1100",
                        "--csv", str(csv_path), "--out", str(out_path)], capsys)
    assert code == 0
    assert "warning: truncated" in out
    assert csv_path.read_text().splitlines()[-1].startswith("# truncated:")
    report = json.loads(out_path.read_text())
    assert report["truncated"] is True
    assert report["truncation_index"] is not None


def test_solve_pivot_failure_exits_3(tmp_path, capsys):
    doc = {
        "exponents": {"alpha": "1/1", "beta": "1/1", "gamma": "1/1"},
        "tau": 1, "delta": 0, "n0": 1,
        "p": {"kind": "constant", "value": -1.0},
        "d": {"kind": "constant", "value": 1.0},
        "a": {"kind": "constant", "value": 1.0},
        "b": {"kind": "constant", "value": 1.0},
        "c": {"kind": "constant", "value": 1.0},
        "f": {"kind": "odd-power", "scale": 1.0, "exponent": "1/1"},
    }
    path = tmp_path / "pivot.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["solve", str(path), "--horizon", "10",
                        "--seed-values", "1,1,1,1,1"], capsys)
    assert code == 3
    assert "numeric failure" in err


def test_solve_explicit_seed_values(capsys):
    # equals form is needed when the first value is negative
    code, out, _ = run(["solve", "example-3", "--horizon", "20",
                        "--seed-values=-1,-0.5,-0.25,-0.125,-0.0625,-0.03125"], capsys)
    assert code == 0
    assert "max relative residual" in out


def test_solve_wrong_seed_count_exits_2(capsys):
    code, _, err = run(["solve", "example-3", "--horizon", "20", "--seed-values", "1,2"], capsys)
    assert code == 2
    assert "seed" in err


def test_classify_closed_forms(capsys):
    code, out, _ = run(["classify", "example-4", "--horizon", "64"], capsys)
    assert code == 0
    assert "quickly-oscillatory" in out
    code, out, _ = run(["classify", "example-3", "--horizon", "64"], capsys)
    assert code == 0
    assert "nonoscillatory-negative" in out
    assert "tends to zero (evidence): True" in out


def test_classify_solved_trajectory(capsys):
    code, out, _ = run(["classify", "example-3", "--horizon", "40", "--solve"], capsys)
    assert code == 0
    assert "nonoscillatory-negative" in out


def test_classify_zero_seed_is_degenerate(capsys):
    code, out, _ = run(["classify", "example-3", "--horizon", "40", "--solve",
                        "--seed-values", "0,0,0,0,0,0"], capsys)
    assert code == 0
    assert "undetermined" in out
    assert "degenerate zero" in out


def test_check_quick_exclusion_report(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(["check", "example-1", "--quick-exclusion", "--out", str(out_path)], capsys)
    assert code == 0
    assert "positive odd terms" in out
    report = json.loads(out_path.read_text())
    assert report["report"]["all_hold"] is True
    assert report["report"]["excluded_parity"] == "odd-positive"


def test_check_quick_exclusion_delta_override_fails(capsys):
    code, out, _ = run(["check", "example-2", "--quick-exclusion", "--delta", "3"], capsys)
    assert code == 1
    assert "delta-even" in out and "FAIL" in out


def test_check_almost_oscillation(capsys):
    code, out, _ = run(["check", "example-4", "--almost-oscillation", "--horizon", "20000"], capsys)
    assert code == 0
    assert "hypotheses hold" in out


def test_check_certificates(capsys):
    code, out, _ = run(["check", "example-1", "--certificate", "--windows", "50"], capsys)
    assert code == 0
    assert "50/50 valid" in out


def test_check_certificate_non_excluded_parity_fails(capsys):
    code, out, _ = run(["check", "example-1", "--certificate", "--windows", "5",
                        "--parity", "even"], capsys)
    assert code == 1
    assert "0/5 valid" in out


def test_check_bound_certificate(capsys):
    code, out, _ = run(["check", "example-4", "--bound"], capsys)
    assert code == 0
    assert "valid" in out


def test_beta_on_file_document_rejected(tmp_path, capsys):
    path = tmp_path / "eq.json"
    path.write_text(json.dumps(qd.example_document("example-2")))
    code, _, err = run(["verify", str(path), "--horizon", "20", "--beta", "3/1"], capsys)
    assert code == 2
    assert "bundled" in err


def test_verify_requires_closed_form_for_files(tmp_path, capsys):
    path = tmp_path / "eq.json"
    path.write_text(json.dumps(qd.example_document("example-2")))
    code, _, err = run(["verify", str(path), "--horizon", "20"], capsys)
    assert code == 2
    assert "closed form" in err
