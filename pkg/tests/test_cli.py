from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from qcverify.cli import UsageError, main, parse_monomial
from qcverify.model import load_model
from qcverify.report import reports_from_json
from qcverify.series import Monomial


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_monomial():
    assert parse_monomial("q", 2, 1) == Monomial((0, 0), (1,))
    assert parse_monomial("q^2*t3^3", 3, 1) == Monomial((0, 0, 3), (2,))
    for bad in ("x", "t", "t4", "q2"):
        with pytest.raises(UsageError):
            parse_monomial(bad, 3, 1)


def test_check_point_all(capsys):
    code, out, _ = run(capsys, "check", "builtin:point", "--suite", "all", "--failures-only")
    assert code == 0
    assert "0 failed" in out


def test_check_applications_p1(capsys):
    code, _, _ = run(capsys, "check", "builtin:p1", "--suite", "applications", "--k-max", "3")
    assert code == 0


def test_mutated_f1_fails_with_witness(capsys):
    code, out, _ = run(capsys, "check", "builtin:p1", "--suite", "derivations", "--mutate-f1", "--report", "json")
    assert code == 1
    recs = reports_from_json(out)
    failed = [r for r in recs if not r.passed]
    assert failed and all(r.witness is not None for r in failed)


def test_check_fills_in_missing_f1(capsys):
    code, out, _ = run(capsys, "check", "builtin:p2", "--suite", "core", "--k-max", "1",
                       "--tuples", "sampled", "--report", "json")
    assert code == 0
    assert json.loads(out)["skipped"] == []


def test_json_report_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", "builtin:p1", "--suite", "axioms", "--report", "json", "-o", str(path))
    assert code == 0
    assert all(r.passed for r in reports_from_json(path.read_text()))


def test_solve_p2_both(capsys, tmp_path):
    path = tmp_path / "p2.json"
    code, out, _ = run(capsys, "solve", "builtin:p2", "--method", "both", "--max-q", "3", "-o", str(path))
    assert code == 0
    assert "agreement OK" in out
    m = load_model(path)
    assert m.F1.coefficient((0, 0, 9), (3,)) * 362880 == 1


def test_solve_p1_and_point(capsys):
    code, out, _ = run(capsys, "solve", "builtin:p1", "--method", "getzler")
    assert code == 0 and "F1 = -1/24*t2" in out
    code, out, _ = run(capsys, "solve", "builtin:point", "--report", "json")
    doc = json.loads(out)
    assert code == 0 and doc["agree"] and doc["reports"][0]["f1"] == "0"


@pytest.mark.parametrize(
    "argv, text",
    [
        (["phi", "builtin:p1", "--k", "1"], "Phi_1 = -1/12"),
        (["phi", "builtin:point", "--k", "0"], "Phi_0 = 0"),
    ],
)
def test_phi(capsys, argv, text):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and text in out


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "builtin:p2", "--genus", "0", "--max-d", "5", "--report", "json")
    assert code == 0
    assert json.loads(out)["invariants"] == [[1, "1"], [2, "1"], [3, "12"], [4, "620"], [5, "87304"]]
    code, out, _ = run(capsys, "invariants", "builtin:p2", "--genus", "1", "--max-d", "3", "--report", "json")
    assert json.loads(out)["invariants"] == [[1, "0"], [2, "0"], [3, "1"]]


def test_gen_then_check_file(tmp_path, capsys):
    path = tmp_path / "p1.json"
    assert run(capsys, "gen", "p1", "--t-degree", "6", "-o", str(path))[0] == 0
    assert load_model(path).trunc_t == 6
    assert run(capsys, "check", str(path), "--suite", "axioms")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "builtin:nope"],
        ["check", "/no/such/file.json"],
        ["check", "builtin:p1", "--mutate-f1", "t1"],
        ["check", "builtin:p1", "--mutate-f1", "q^9"],
    ],
)
def test_load_and_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_unknown_suite_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "builtin:p1", "--suite", "bogus"])
    assert exc.value.code == 2


@pytest.mark.skipif(shutil.which("qcverify") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["qcverify", "phi", "builtin:p2", "--k", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "-3/8" in proc.stdout
