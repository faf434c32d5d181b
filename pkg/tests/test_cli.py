from __future__ import annotations

import json
import subprocess
import sys

import pytest

from coinvariants.cli import main, parse_field
from coinvariants.errors import UserInputError


def run(capsys, *argv):
    code = main(list(argv))
    out = json.loads(capsys.readouterr().out)
    assert out["exit_code"] == code
    return code, out


def strip(payload):
    return {k: v for k, v in payload.items() if k != "timings"}


def test_invariants_examples(capsys):
    code, out = run(capsys, "--q", "2", "--group", "GL(2)", "invariants")
    assert code == 0 and out["degrees"] == [2, 3] and len(out["generators"]) == 2
    assert all(out["invariant"])
    code, out = run(capsys, "--q", "2", "--group", "U(1,1)", "invariants")
    assert code == 0 and out["degrees"] == [1, 2]
    code, out = run(capsys, "--q", "3", "--group", "G(2,2,2)", "invariants")
    assert code == 0 and out["degrees"] == [2, 2]


def test_invariants_closure(capsys):
    code, out = run(capsys, "--q", "2", "--group", "GL(2)", "invariants", "--closure")
    assert out["closure_order"] == out["group_order"] == 6


def test_verify_examples(capsys):
    code, out = run(capsys, "--q", "2", "--group", "GL(2)", "verify", "--candidate", "auto")
    assert code == 0 and out["verified"] and out["factor_count"] == 6
    code, out = run(capsys, "--q", "3", "--group", "G(2,2,2)", "verify", "--candidate", "auto")
    assert code == 1 and not out["verified"] and out["refutation_complete"]
    code, out = run(capsys, "--q", "3", "--group", "G(2,2,2)", "verify", "--expect", "none")
    assert code == 0
    code, out = run(capsys, "--q", "2", "--group", "U(1,1)", "verify", "--candidate", "x2^1")
    assert code == 0 and out["verified"]
    code, out = run(capsys, "--q", "2", "--group", "GL(2)", "verify", "--candidate", "x1^3")
    assert code == 1 and out["witness"]


def test_normal_form_examples(capsys):
    base = ("--q", "3", "--group", "G(1,1,2)", "normal-form")
    code, out = run(capsys, *base, "x2")
    assert code == 0 and out["normal_form"] == "2*x1" and not out["in_ideal"]
    assert run(capsys, *base, "x1+x2")[1]["normal_form"] == "0"
    assert run(capsys, *base, "x1+x2")[1]["in_ideal"]
    code, out = run(capsys, *base, "1")
    assert out["normal_form"] == "1" and not out["in_ideal"]


def test_member_and_dimension(capsys):
    code, out = run(capsys, "--q", "2", "--group", "GL(2)", "member", "x1^2*x2+x1*x2^2")
    assert code == 0 and out["in_ideal"]
    code, out = run(capsys, "--q", "2", "--group", "GL(2)", "dimension")
    assert code == 0 and out["dimension"] == 6


def test_product(capsys):
    code, out = run(capsys, "--q", "2", "--group", "U(1,1)", "product", "x2", "x2")
    assert code == 0 and out["product"] == "0"
    code, out = run(capsys, "--q", "3", "--group", "G(1,1,2)", "product", "x1", "1")
    assert out["product"] == "x1"


def test_critical(capsys):
    code, out = run(capsys, "--q", "2", "--group", "U(1,1)", "critical")
    assert code == 0 and sorted(out["criticals"]) == ["x1", "x2^2"] and out["trivial"]


def test_exit_codes(capsys):
    code, out = run(capsys, "--q", "3", "--group", "G(1,1,2)", "normal-form", "x1+*x2")
    assert code == 2 and out["error"]["type"] == "ParseError" and out["error"]["position"] == 3
    code, out = run(capsys, "--q", "6", "--group", "GL(2)", "invariants")
    assert code == 2
    code, out = run(capsys, "--q", "2", "--group", "GL(9,9)", "invariants")
    assert code == 2
    code, out = run(capsys, "--q", "3", "--group", "GL(2)", "invariants", "--closure")
    assert code == 0
    code, out = run(capsys, "--q", "3", "--cap-closure", "10", "--group", "GL(2)", "invariants", "--closure")
    assert code == 3 and out["error"]["kind"] == "cap_exceeded"


def test_output_deterministic(capsys):
    argv = ("--q", "3", "--group", "GL(2)", "verify")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert strip(a) == strip(b)
    assert "timings" in a


def test_out_file(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code = main(["--q", "2", "--group", "GL(2)", "--out", str(path), "verify"])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(path.read_text())["factor_count"] == 6


def test_suite_only(capsys):
    code, out = run(capsys, "suite", "--only", "gman")
    assert code == 0 and out["passed"]
    assert [c["name"] for c in out["criteria"]] == ["gman"]
    code, out = run(capsys, "suite", "--only", "8")
    assert [c["name"] for c in out["criteria"]] == ["weyl"]
    code, out = run(capsys, "suite", "--only", "nope")
    assert code == 2


def test_parse_field():
    assert parse_field("9").q == 9
    assert parse_field("3^2").q == 9
    assert parse_field("q=3^2").r == 2
    with pytest.raises(UserInputError):
        parse_field("6")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coinvariants", "--q", "2", "--group", "GL(2)", "dimension"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dimension"] == 6
