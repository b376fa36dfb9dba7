"""Regenerate the golden CLI outputs in tests/golden/.

Run after an intentional change of a file format; the CLI tests compare
fresh outputs byte for byte against these files.
"""
import contextlib
import io
from pathlib import Path

from sptori.cli import main

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"
GOLDEN = ROOT / "tests" / "golden"

BUILDS = [
    ("quantum_z2x2.json", "quantum_z2x2.algebra.json", []),
    ("octonion3.json", "octonion3_w1.algebra.json", ["--window", "1"]),
    ("clifford_z2x2.json", "clifford_z2x2.algebra.json", []),
    ("quantum_z2x2_sp4.json", "quantum_z2x2_sp4.lie.jsonl", []),
]
REPORTS = [
    (["verify", "quantum_z2x2_sp4.json"], "verify_quantum_z2x2_sp4.json"),
    (["classify", "quantum_z2x2_sp4.json"], "classify_quantum_z2x2_sp4.json"),
    (["classify", "clifford_z2x2_sp4.json"], "classify_clifford_z2x2_sp4.json"),
]


def run(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    if code != 0:
        raise SystemExit(f"{argv} exited with {code}")
    return out.getvalue()


def main_():
    GOLDEN.mkdir(exist_ok=True)
    for cfg, name, extra in BUILDS:
        run(["build", str(CONFIGS / cfg), "--out", str(GOLDEN / name), *extra])
        print("wrote", name)
    for argv, name in REPORTS:
        argv = [argv[0], str(CONFIGS / argv[1]), *argv[2:]]
        (GOLDEN / name).write_text(run(argv), encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    main_()
