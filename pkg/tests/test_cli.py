import json
import subprocess
import sys

import pytest

from enbrauer.algebra import Hopf, check_hopf_axioms
from enbrauer.cli import run, witness_from_json
from enbrauer.linalg import from_json


def call(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = run(list(argv) + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None), out


def test_build_roundtrip(tmp_path):
    code, rep, _ = call(tmp_path, "build", "--n", "2")
    assert code == 0 and rep["checks"][0]["ok"]
    h = Hopf.from_json(rep)
    assert h.dim == 8 and check_hopf_axioms(h) == []


def test_build_rejects_negative_n(capsys):
    assert run(["build", "--n", "-1"]) == 2
    assert "nonnegative" in capsys.readouterr().err


def test_malformed_inputs():
    assert run(["orbit", "--matrix", "[[1,2],"]) == 2
    assert run(["orbit", "--matrix", "[[1,2,3],[4,5,6]]"]) == 2
    assert run(["build", "--n", "1", "--field", "p15"]) == 2
    assert run(["twist", "--matrix", "[[1]]", "--cocycle", "[[1,2],[3,4]]"]) == 2
    assert run(["symgroup", "--n", "3", "--r", "1", "--M", "[[0,1,0],[-1,0,0],[0,0,0]]", "op"]) == 2
    assert run(["nosuchcommand"]) == 2


def test_orbit(tmp_path):
    code, rep, _ = call(tmp_path, "orbit", "--matrix", "[[0,2],[-2,0]]")
    assert code == 0 and rep["l"] == 1 and rep["verified"]
    t = from_json(rep["T"])
    assert t.shape == (2, 2)


def test_rmatrix_and_twist(tmp_path):
    code, rep, _ = call(tmp_path, "rmatrix", "--n", "2", "--matrix", "[[1,2],[0,3]]")
    assert code == 0 and all(c["ok"] for c in rep["checks"])
    code, rep, _ = call(tmp_path, "rmatrix", "--n", "2", "--matrix", "[[0,1],[-1,0]]", "--check", "triangular")
    assert code == 1 and rep["checks"][0]["symmetric_A"] is False
    code, rep, _ = call(tmp_path, "twist", "--matrix", "[[3]]", "--cocycle", "[[5]]")
    assert code == 0 and from_json(rep)[0, 0] == -7


def test_clifford(tmp_path):
    code, rep, _ = call(tmp_path, "clifford", "--n", "1", "--L", "[[2]]", "--check", "all")
    assert code == 0 and len(rep["checks"]) == 3
    code, rep, _ = call(tmp_path, "clifford", "--n", "1", "--L", "[[0]]", "--check", "azumaya")
    assert code == 1 and rep["checks"][0]["F_rank"] < rep["checks"][0]["dim2"]


def test_invariants_and_witness_roundtrip(tmp_path):
    mod = json.dumps({"type": "product", "left": {"type": "a_sigma", "L": [[3]]},
                      "right": {"type": "a_sigma", "L": [[-5]]}})
    code, rep, _ = call(tmp_path, "invariants", "--module", mod)
    assert code == 0
    w = witness_from_json(rep)
    assert w.alpha == 1 and w.l[0, 0] == -2
    code, rep, _ = call(tmp_path, "invariants", "--module", json.dumps({"type": "a_alpha", "T": [[2]]}))
    assert code == 0 and rep["strongly_inner"]


def test_module_file_input(tmp_path):
    path = tmp_path / "mod.json"
    path.write_text(json.dumps({"type": "strongly_inner", "c": [[1, 0], [0, -1]], "x": [[[0, 1], [0, 0]]]}))
    code, rep, _ = call(tmp_path, "invariants", "--module", str(path))
    assert code == 0 and rep["strongly_inner"] and from_json(rep["L"])[0, 0] == 0


def test_symgroup(tmp_path):
    m = "[[0,1,0],[-1,0,0],[0,0,0]]"
    code, rep, _ = call(tmp_path, "symgroup", "--n", "3", "--r", "1", "--M", m, "op",
                        "--L", "[[0,0,1],[0,0,0],[1,0,0]]", "--N", "[[0,0,0],[0,0,1],[0,1,2]]")
    assert code == 0
    assert from_json(rep["L+N"])[2, 2] == 6 and from_json(rep["N+L"])[2, 2] == -2
    code, rep, _ = call(tmp_path, "symgroup", "--n", "3", "--r", "1", "--M", m, "axioms", "--samples", "20")
    assert code == 0 and rep["ok"]
    code, rep, _ = call(tmp_path, "symgroup", "--n", "3", "--r", "1", "--M", m, "central", "--samples", "10")
    assert code == 0 and rep["ok"]


def test_chi_and_autact(tmp_path):
    code, rep, _ = call(tmp_path, "chi", "--n", "1", "--L", "[[3]]", "--check-product", "[[-5]]")
    assert code == 0 and rep["verified"] and not rep["strongly_inner"]
    assert from_json(rep["product"]["witness"]["L"])[0, 0] == -2
    code, rep, _ = call(tmp_path, "autact", "--T", "[[2]]", "--L", "[[3]]", "--verify")
    assert code == 0 and from_json(rep["TLT^t"])[0, 0] == 12
    assert run(["autact", "--T", "[[0]]", "--L", "[[3]]"]) == 2


def test_verify_all_deterministic(tmp_path):
    c1, rep, p1 = call(tmp_path, "verify-all", "--n", "1", "--seed", "3", name="a.json")
    c2, _, p2 = call(tmp_path, "verify-all", "--n", "1", "--seed", "3", name="b.json")
    assert c1 == c2 == 0
    assert p1.read_bytes() == p2.read_bytes()
    assert all(c["ok"] and c["anchor"] for c in rep["checks"])


def test_verify_all_prime_field(tmp_path):
    code, rep, _ = call(tmp_path, "verify-all", "--n", "1", "--seed", "1", "--field", "p101")
    assert code == 0 and rep["field"].endswith("101")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "enbrauer.cli", "orbit", "--matrix", "[[1,2],[2,1]]"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["l"] == 0
