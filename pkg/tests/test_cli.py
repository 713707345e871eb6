import json
import subprocess
import sys
from pathlib import Path

import pytest

from qlambda import poly
from qlambda.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_qn_k2(capsys):
    code, out, err = run(capsys, "--kind", "qn", "--input", DATA / "k2.edges")
    assert code == 0 and out == "2*y\n"
    assert "n=2" in err and "time=" in err


def test_pi_matches_qlambda(capsys):
    _, pi, _ = run(capsys, "--format", "dow", "--kind", "pi", "--input", DATA / "abab.dow")
    _, q, _ = run(capsys, "--kind", "qlambda", "--input", DATA / "k2.edges")
    assert pi == q


def test_methods_byte_identical(capsys):
    outs = set()
    for method in ("recursive", "bruteforce"):
        for kind in ("qlambda", "q2", "qn", "q", "Qahv", "courcelle"):
            code, out, _ = run(capsys, "-i", DATA / "p3.edges", "-k", kind, "-m", method)
            assert code == 0
            outs.add((kind, out))
    assert len(outs) == 6


def test_reduce_method(capsys):
    _, brute, _ = run(capsys, "-i", DATA / "p3.edges", "-k", "qn", "-m", "bruteforce")
    _, red, _ = run(capsys, "-i", DATA / "p3.edges", "-k", "qn", "-m", "reduce")
    assert brute == red == "y^2 + 2*y\n"
    code, out, _ = run(capsys, "-i", DATA / "p3.edges", "-k", "Qahv", "-m", "reduce", "-b", "y=2", "--s-max", "2")
    assert code == 0 and out == "40\n"


def test_bindings(capsys):
    code, out, _ = run(capsys, "-i", DATA / "k2.edges", "-k", "Qahv", "-b", "y=1/2")
    assert code == 0 and out == "15/2\n"
    code, _, err = run(capsys, "-i", DATA / "k2.edges", "-b", "y")
    assert code == 2 and "VAR=VALUE" in err


def test_json_output_round_trips(capsys):
    code, out, _ = run(capsys, "-f", "json", "-i", DATA / "k2.json", "-o", "json")
    assert code == 0
    doc = json.loads(out)
    p = poly.from_json(doc["polynomial"])
    assert p.canonical_text() == doc["text"]
    assert poly.parse(doc["text"]) == p
    assert doc["n"] == 2 and doc["kind"] == "qlambda"


def test_label_file(tmp_path, capsys):
    lab = tmp_path / "labels.json"
    lab.write_text(json.dumps({"a": {"phi": 1, "chi": 1, "psi": 1}, "b": {"phi": 1, "chi": 1, "psi": 1}}))
    code, out, _ = run(capsys, "-i", DATA / "k2.edges", "-l", lab)
    assert out == "3*y + 6\n"
    code, out, _ = run(capsys, "-f", "dow", "-k", "pi", "-i", DATA / "abab.dow", "-l", lab)
    assert out == "3*y + 6\n"
    bad = tmp_path / "bad.json"
    bad.write_text('{"zz": {"phi": 1}}')
    code, _, err = run(capsys, "-i", DATA / "k2.edges", "-l", bad)
    assert code == 2


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "-i", DATA / "bad.edges")
    assert code == 2 and out == ""
    assert "line 2, column 5" in err


def test_format_kind_mismatch(capsys):
    assert run(capsys, "-k", "pi", "-i", DATA / "k2.edges")[0] == 2
    assert run(capsys, "-f", "dow", "-k", "qn", "-i", DATA / "abab.dow")[0] == 2
    assert run(capsys, "-i", DATA / "missing.edges")[0] == 2


def test_cap_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("INTERLACE_VERTEX_CAP", "2")
    code, _, err = run(capsys, "-i", DATA / "p3.edges")
    assert code == 3 and "cap" in err


def test_pi_directed(capsys):
    code, out, _ = run(capsys, "-f", "dow", "-k", "pi-directed", "-i", DATA / "abab_dir.dow")
    assert code == 0 and out == "y*phi_a*chi_b + y*chi_a*phi_b + phi_a*phi_b + chi_a*chi_b\n"
    code, _, err = run(capsys, "-f", "dow", "-k", "pi-directed", "-i", DATA / "abab.dow")
    assert code == 2


def test_verify_pass(capsys):
    code, _, err = run(capsys, "-i", DATA / "p3.edges", "--verify")
    assert code == 0 and err.count("verify: PASS") == 3
    code, _, err = run(capsys, "-f", "dow", "-k", "pi", "-i", DATA / "abab.dow", "--verify")
    assert code == 0 and err.count("verify: PASS") == 3


def test_verify_failure_exit_code(capsys, monkeypatch):
    from qlambda import interlace

    real = interlace.qlambda_recursive
    monkeypatch.setattr(interlace, "qlambda_recursive", lambda g, y=None, **kw: real(g, y, **kw) + 1)
    code, _, err = run(capsys, "-i", DATA / "k2.edges", "--verify")
    assert code == 4
    assert "FAIL oracle equivalence: witness" in err


def test_deterministic_output(capsys):
    outs = {run(capsys, "-i", DATA / "p3.edges", "-k", "courcelle")[1] for _ in range(3)}
    assert len(outs) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qlambda", "-k", "qn", "-i", str(DATA / "k2.edges")],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "2*y\n"


def test_stdin_input():
    res = subprocess.run([sys.executable, "-m", "qlambda", "-k", "Qahv"], input="a b\n",
                         capture_output=True, text=True, check=False)
    assert res.stdout == "3*y + 6\n"
