import json
import subprocess
import sys
from pathlib import Path

import pytest

from ctxlab.cli import main

ROOT = Path(__file__).parent.parent
SC = ROOT / "scenarios"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


@pytest.mark.parametrize("name, flags, verdict", [
    ("torus_zero", ["--equivariant"], "non-contextual"),
    ("torus_eighth", ["--equivariant"], "contextual"),
    ("torus_eighth", ["--equivariant", "--via-borel"], "contextual"),
    ("torus_half", ["--equivariant", "--relative"], "contextual"),
    ("torus_explicit", [], "non-contextual"),
])
def test_check_verdicts(capsys, name, flags, verdict):
    res = run_json(capsys, "check", SC / f"{name}.json", *flags)
    assert res["verdict"] == verdict and res["verified"]


def test_obstructions(capsys):
    g = run_json(capsys, "obstruction", SC / "torus_half.json", "--which", "gammaG")
    assert g["class_zero"] is False and len(g["representative"]) == 8
    phi = run_json(capsys, "obstruction", SC / "torus_half.json", "--which", "phi")
    assert phi["joint_system_solvable"] is False and set(phi["representative"].values()) == {1}
    beta = run_json(capsys, "obstruction", SC / "dihedral.json", "--which", "beta")
    assert beta["class_zero"] is True
    bG = run_json(capsys, "obstruction", SC / "dihedral.json", "--which", "betaG")
    assert bG["class_zero"] is False
    m = run_json(capsys, "obstruction", SC / "mermin.json", "--which", "gamma")
    assert m["class_zero"] is True and "witness" in m
    star = run_json(capsys, "obstruction", SC / "mermin_star.json", "--which", "beta")
    assert star["class_zero"] is False


def test_enumerate_and_born(capsys):
    e = run_json(capsys, "enumerate", SC / "torus_zero.json", "--equivariant")
    assert e["count"] == len(e["maps"]) > 0
    b = run_json(capsys, "born", SC / "mermin.json")
    assert b["valid"] and b["relative"] and b["equivariant"]


def test_json_output_is_deterministic(capsys):
    argv = ["obstruction", SC / "mermin.json", "--which", "phi", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x"}')
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "required property" in err
    assert run(capsys, "check", tmp_path / "missing.json")[0] == 2
    # the extension scenario has no symmetry
    assert run(capsys, "obstruction", SC / "mermin_star.json", "--which", "betaG")[0] == 2
    assert run(capsys, "check", SC / "dihedral.json")[0] == 2


def test_internal_failure_exits_3(capsys, monkeypatch):
    import ctxlab.sdist as sdist
    monkeypatch.setattr(sdist.ContextualityCertificate, "verify", lambda self, p: False)
    assert run(capsys, "check", SC / "torus_zero.json")[0] == 3


def test_console_script_runs():
    out = subprocess.run([sys.executable, "-m", "ctxlab.cli", "example", "dihedral", "--format", "json"],
                         capture_output=True, text=True, check=True)
    rep = json.loads(out.stdout)["reports"][0]
    assert all(c["ok"] for c in rep["checks"])
