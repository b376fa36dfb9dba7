import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from oracles import quantum_product
from sptori.cli import main

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def cfg(name):
    return CONFIGS / name


# -- build -------------------------------------------------------------------------


@pytest.mark.parametrize("config,golden,extra", [
    ("quantum_z2x2.json", "quantum_z2x2.algebra.json", []),
    ("octonion3.json", "octonion3_w1.algebra.json", ["--window", "1"]),
    ("clifford_z2x2.json", "clifford_z2x2.algebra.json", []),
    ("quantum_z2x2_sp4.json", "quantum_z2x2_sp4.lie.jsonl", []),
])
def test_build_matches_golden(capsys, tmp_path, config, golden, extra):
    out = tmp_path / golden
    code, _, _ = run(capsys, "build", cfg(config), "--out", out, *extra)
    assert code == 0
    assert out.read_bytes() == (GOLDEN / golden).read_bytes()
    dims = Path(str(out) + ".dims.txt")
    if dims.exists():
        assert dims.read_bytes() == Path(str(GOLDEN / golden) + ".dims.txt").read_bytes()


def test_build_is_deterministic(capsys):
    first = run(capsys, "build", cfg("quantum_z2x2_sp4.json"))[1]
    second = run(capsys, "build", cfg("quantum_z2x2_sp4.json"))[1]
    assert first == second and first


def test_quantum_golden_against_normal_ordering():
    d = json.loads((GOLDEN / "quantum_z2x2.algebra.json").read_text())
    degs = [tuple(b["degree"]) for b in d["basis"]]
    assert len(degs) == 4
    q = [[1, -1], [-1, 1]]
    seen = 0
    for i, j, rows in d["table"]:
        c, g = quantum_product(q, {0: 2, 1: 2}, degs[i], degs[j])
        assert [[degs.index(g), c.numerator, c.denominator]] == rows
        seen += 1
    assert seen == 16


def test_octonion_golden_shape():
    d = json.loads((GOLDEN / "octonion3_w1.algebra.json").read_text())
    assert d["window"] == 1
    assert len(d["basis"]) == 27  # one basis element per degree in {-1,0,1}^3
    assert d["config"] == {"kind": "octonion", "n": 3}


def test_lie_golden_dimension():
    lines = (GOLDEN / "quantum_z2x2_sp4.lie.jsonl").read_text().splitlines()
    head = json.loads(lines[0])
    assert len(head["basis"]) == 36
    dims = (GOLDEN / "quantum_z2x2_sp4.lie.jsonl.dims.txt").read_text().splitlines()[1:]
    assert sum(int(row.split("\t")[2]) for row in dims) == 36


def test_bad_cocycle_exit_2(capsys):
    code, out, _ = run(capsys, "build", cfg("bad_cocycle.json"))
    assert code == 2
    assert json.loads(out)["error"] == "invalid-cocycle"


def test_schema_violation_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"kind": "quantum", "group": {"free_rank": 0, "torsion": [1]}, "q": []}))
    code, out, _ = run(capsys, "build", p)
    assert code == 2 and json.loads(out)["error"] == "schema-violation"


def test_infinite_group_needs_window(capsys):
    code, out, _ = run(capsys, "build", cfg("octonion3.json"))
    assert code == 2 and json.loads(out)["error"] == "usage"
    code, out, _ = run(capsys, "verify", cfg("quantum_z2_sp4.json"))
    assert code == 2 and json.loads(out)["error"] == "usage"


# -- verify ------------------------------------------------------------------------


def test_verify_rationals_all_suites(capsys):
    code, out, _ = run(capsys, "verify", cfg("rationals_sp4.json"))
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "pass"
    assert set(rep["suites"]) == {"axioms", "jacobi", "identities", "lemmas"}


def test_verify_report_matches_golden(capsys):
    code, out, _ = run(capsys, "verify", cfg("quantum_z2x2_sp4.json"))
    assert code == 0
    assert out == (GOLDEN / "verify_quantum_z2x2_sp4.json").read_text()


def test_verify_file_round_trip(capsys, tmp_path):
    p = tmp_path / "sp4.jsonl"
    assert run(capsys, "build", cfg("quantum_z2x2_sp4.json"), "--out", p)[0] == 0
    code, out, _ = run(capsys, "verify", p)
    assert code == 0 and json.loads(out)["status"] == "pass"


def _corrupt(src, dst):
    lines = src.read_text().splitlines()
    row = json.loads(lines[1])
    row["v"][0][1] += 1
    lines[1] = json.dumps(row, sort_keys=True)
    dst.write_text("\n".join(lines) + "\n")


def test_corrupted_file_fails_with_witness(capsys, tmp_path):
    bad = tmp_path / "bad.jsonl"
    _corrupt(GOLDEN / "quantum_z2x2_sp4.lie.jsonl", bad)
    code, out, _ = run(capsys, "verify", bad, "--suite", "jacobi")
    assert code == 1
    rep = json.loads(out)
    jac = [c for c in rep["suites"]["jacobi"]["checks"] if c["name"] == "jacobi"][0]
    assert jac["status"] == "fail" and jac["witnesses"]
    code, out, _ = run(capsys, "classify", bad)
    assert code == 1 and json.loads(out)["error"] == "verification-failed"


def test_windowed_verify_labels_window(capsys):
    code, out, _ = run(capsys, "verify", cfg("quantum_z2_sp4.json"), "--window", "1", "--suite", "axioms")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass (window 1)"


def test_algebra_file_verify(capsys):
    code, out, _ = run(capsys, "verify", GOLDEN / "quantum_z2x2.algebra.json")
    rep = json.loads(out)
    assert code == 0 and rep["input"] == "algebra"
    assert rep["suites"]["jacobi"]["status"] == "not-applicable"


# -- classify ----------------------------------------------------------------------


def test_classify_quantum_golden(capsys):
    code, out, err = run(capsys, "classify", cfg("quantum_z2x2_sp4.json"))
    assert code == 0
    assert out == (GOLDEN / "classify_quantum_z2x2_sp4.json").read_text()
    assert "associative torus with involution" in err


def test_classify_clifford_golden(capsys):
    code, out, _ = run(capsys, "classify", cfg("clifford_z2x2_sp4.json"))
    assert code == 0
    assert out == (GOLDEN / "classify_clifford_z2x2_sp4.json").read_text()
    assert json.loads(out)["branch"] == "Clifford torus"


def test_classify_file_keeps_fingerprint(capsys, tmp_path):
    p = tmp_path / "sp4.jsonl"
    run(capsys, "build", cfg("quantum_z2x2_sp4.json"), "--out", p)
    code, out, _ = run(capsys, "classify", p)
    golden = json.loads((GOLDEN / "classify_quantum_z2x2_sp4.json").read_text())
    got = json.loads(out)
    assert code == 0
    assert got["evidence"]["fingerprint"] == golden["evidence"]["fingerprint"]


def test_classify_rejects_plain_algebra(capsys):
    code, out, _ = run(capsys, "classify", cfg("quantum_z2x2.json"))
    assert code == 2


@pytest.mark.slow
def test_classify_octonion(capsys):
    code, out, _ = run(capsys, "classify", cfg("octonion3_sp6.json"), "--window", "1")
    rep = json.loads(out)
    assert code == 0
    assert rep["branch"] == "octonion/alternative torus, standard involution"
    assert rep["evidence"]["symmetric in nucleus"] is True
    assert rep["evidence"]["associativity witness"]
    assert rep["evidence"]["round-trip"] == "pass (window 1)"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sptori", "build", str(cfg("quantum_z2x2.json"))],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["format"] == "sptori-algebra"
