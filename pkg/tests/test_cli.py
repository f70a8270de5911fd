import json
import subprocess
import sys

import pytest

from diffindex.cli import load_golden_text, main
from diffindex.parser import parse_polynomial

from conftest import SYSTEMS


@pytest.fixture
def golden_file(tmp_path):
    path = tmp_path / "golden.dsys"
    path.write_text(load_golden_text(), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_index_json(capsys, golden_file):
    code, out, _ = run(capsys, "index", "--system", golden_file, "--format", "json", "--assume-quasi-regular")
    assert code == 0
    doc = json.loads(out)
    assert doc["version"] == 1
    assert {"mu", "omega", "order", "jacobi_number", "jacobi_bound", "bound_holds", "regularity_table"} <= set(doc)
    assert doc["mu"] == [0, 1, 2, 2]
    assert (doc["omega"], doc["order"], doc["jacobi_bound"]) == (2, 1, 3)
    assert doc["bound_holds"] and doc["omega"] + doc["order"] == doc["jacobi_bound"]
    assert doc["status"] == "unconditional"


def test_index_text_is_conditional_without_flag(capsys, golden_file):
    code, out, _ = run(capsys, "index", "--system", golden_file)
    assert code == 0
    assert out.startswith("[conditional]")
    assert "omega = 2" in out


def test_index_scalar(capsys, tmp_path):
    path = tmp_path / "exp.dsys"
    path.write_text(SYSTEMS["exp"])
    code, out, _ = run(capsys, "index", "--system", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and (doc["omega"], doc["order"]) == (0, 1)


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.dsys"
    path.write_text("vars: y1\nf1: y1^(1) - * y1\n")
    code, _, err = run(capsys, "index", "--system", str(path))
    assert code == 2
    assert ":2:" in err and "parse error" in err


def test_usage_errors(capsys, golden_file, tmp_path):
    assert run(capsys, "index")[0] == 2
    assert run(capsys, "index", "--system", str(tmp_path / "missing"))[0] == 2
    path = tmp_path / "so.dsys"
    path.write_text(SYSTEMS["second_order"])
    assert run(capsys, "mu", "--system", str(path), "--i", "0")[0] == 2
    path = tmp_path / "static.dsys"
    path.write_text("vars: y1\nf1: y1 - 1\n")
    code, _, err = run(capsys, "index", "--system", str(path))
    assert code == 2 and "no transform" in err
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2


def test_member_round_trips(capsys, golden_file):
    code, out, _ = run(capsys, "member", "--system", golden_file, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    by_label = {r["label"]: r for r in doc["results"]}
    q1 = by_label["q1"]
    assert q1["member"] and q1["N"] == 1
    names = ["y1", "y2", "y3"]
    from diffindex.parser import parse_system_file

    system = parse_system_file(load_golden_text()).system
    from diffindex.diffpoly import DiffPolynomial, transform

    total = DiffPolynomial()
    for c in q1["cofactors"]:
        g = parse_polynomial(c["cofactor"], names)
        total = total + g * transform(system.equations[c["equation"] - 1], c["transform"])
    assert total == parse_polynomial("y3 - 1", names)
    assert not by_label["q2"]["member"]
    assert "conditional" in by_label["q2"]["verdict"]


def test_member_poly_flag(capsys, golden_file):
    code, out, _ = run(capsys, "member", "--system", golden_file, "--poly", "y1", "--N", "3", "--assume-quasi-regular")
    assert code == 0
    assert "not in [F]" in out
    code, _, err = run(capsys, "member", "--system", golden_file, "--poly", "y9")
    assert code == 2 and "undeclared" in err


def test_mu_jacobi_order_regularity_check(capsys, golden_file):
    code, out, _ = run(capsys, "mu", "--system", golden_file, "--format", "json")
    assert code == 0
    table = json.loads(out)["table"]
    assert [row["rank"] for row in table] == [0, 2, 4, 7]
    assert all(row["lower"] <= row["mu"] <= row["upper"] for row in table)
    code, out, _ = run(capsys, "jacobi", "--system", golden_file, "--format", "json")
    assert json.loads(out)["jacobi_number"] == 2
    code, out, _ = run(capsys, "order", "--system", golden_file)
    assert code == 0 and "= 1" in out
    code, out, _ = run(capsys, "regularity", "--system", golden_file, "--format", "json")
    assert code == 0 and json.loads(out)["bound_holds"]
    code, out, _ = run(capsys, "check", "--system", golden_file, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and doc["k_max"] == 4


def test_check_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "dup.dsys"
    path.write_text("vars: y1 y2\nf1: y1^(1) - y1\nf2: 2*y1^(1) - 2*y1\n")
    code, out, _ = run(capsys, "check", "--system", str(path), "--kmax", "2")
    assert code == 1 and "FAILS at k = 1" in out


def test_example(capsys):
    code, out, _ = run(capsys, "example")
    assert code == 0
    assert "golden report reproduced" in out


def test_module_entry_point(golden_file):
    proc = subprocess.run(
        [sys.executable, "-m", "diffindex", "jacobi", "--system", golden_file],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "J(E0) = 2" in proc.stdout
