import io
import json
import os
import subprocess
import sys

import pytest

from brstforms.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_PARSE, run

THEORIES = os.path.join(os.path.dirname(__file__), "..", "theories")


def theory(name):
    return os.path.join(THEORIES, name)


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--format", "json")
    return code, json.loads(text)


@pytest.mark.parametrize("argv", [
    ("build", "-i", "su2", "--variant", "graded-extended"),
    ("build", "-i", theory("affine2.json"), "--variant", "graded"),
    ("nilpotency", "-i", "su2"),
    ("nilpotency", "-i", "su2", "--charge", "extended"),
    ("nilpotency", "-i", theory("su2.theory"), "--variant", "graded"),
    ("nilpotency", "-i", theory("affine2.json")),
    ("eom", "-i", "su2", "--variant", "graded"),
    ("lda", "-i", theory("moving_base.theory")),
    ("koszul", "--dim", "3"),
    ("property-suite", "--count", "5"),
    ("structural", "-i", "su2", "-F", "u[0]*vol(1)"),
    ("bracket", "-i", "su2", "-F", "u[0]*vol(1)", "-G", "p[0,0]*vol(0) + p[0,1]*vol(1)",
     "--expect", "vol(1)"),
])
def test_passing_commands(argv):
    code, out = call(*argv)
    assert code == EXIT_OK, out
    assert "FAIL" not in out


def test_json_output_round_trips():
    code, doc = call_json("nilpotency", "-i", "su2")
    assert code == EXIT_OK
    assert doc["schema"] == 1 and doc["command"] == "nilpotency" and doc["ok"]
    assert json.loads(json.dumps(doc, sort_keys=True)) == doc
    assert {c["name"] for c in doc["checks"]} == {"[V,V]=0", "{Q,Q}=0"}


def test_output_is_deterministic():
    a = call("property-suite", "--count", "5", "--seed", "3", "--format", "json")
    b = call("property-suite", "--count", "5", "--seed", "3", "--format", "json")
    assert a == b


def test_failed_check_exits_one_with_witness():
    code, doc = call_json("nilpotency", "-i", theory("moving_base.theory"), "--variant", "graded")
    assert code == EXIT_FAIL
    (bad,) = [c for c in doc["checks"] if c["status"] == "FAIL"]
    assert "deta" in bad["term"] and "du[0]" in bad["term"]


def test_wrong_expectation_fails():
    code, doc = call_json("bracket", "-i", "su2", "-F", "u[0]*vol(1)", "-G",
                          "p[0,0]*vol(0) + p[0,1]*vol(1)", "--expect", "2*vol(1)")
    assert code == EXIT_FAIL
    assert doc["checks"][0]["term"]


def test_antisymmetry_violation_is_an_input_error(capsys):
    code, out = call("build", "-i", theory("bad_antisymmetry.theory"))
    assert code == EXIT_PARSE
    err = capsys.readouterr().err
    assert "bad_antisymmetry.theory:8" in err and "antisymmetric" in err


def test_input_errors_in_json():
    code, doc = call_json("build", "-i", "missing.theory")
    assert code == EXIT_PARSE
    assert doc["ok"] is False and "missing.theory" in doc["error"]


def test_bad_expression_is_an_input_error():
    code, _ = call("structural", "-i", "su2", "-F", "u[9]*vol(1)")
    assert code == EXIT_PARSE


def test_usage_errors():
    assert call("bogus")[0] == EXIT_PARSE
    assert call("koszul")[0] == EXIT_PARSE


def test_truncation_cap():
    code, doc = call_json("koszul", "--dim", "2", "--truncation", "9")
    assert code == EXIT_CAP
    assert doc["checks"][0]["name"] == "cap"


def test_solver_cap():
    code, _ = call("structural", "-i", "su2", "-F", "u[0]**6*vol(1)", "--cap", "2")
    assert code == EXIT_CAP


def test_jacobi_violation_needs_opt_in(tmp_path):
    src = tmp_path / "nonjacobi.theory"
    src.write_text(
        "name: nj\nn: 2\nfields: [{name: u, shape: [3], momentum: p}]\n"
        "algebra:\n  dim: 3\n  structure_constants:\n"
        "    - [2, 0, 1, 1]\n    - [2, 1, 0, -1]\n    - [0, 1, 2, 1]\n    - [0, 2, 1, -1]\n"
        "    - [1, 2, 0, 1]\n    - [1, 0, 2, -1]\n    - [0, 0, 1, 1]\n    - [0, 1, 0, -1]\n"
        "generators: adjoint\n")
    code, _ = call("nilpotency", "-i", str(src))
    assert code == EXIT_PARSE
    code, doc = call_json("nilpotency", "-i", str(src), "--allow-jacobi-violation")
    assert code == EXIT_FAIL
    assert doc["warnings"]
    assert any(c["name"] == "{Q,Q}=0" and c["status"] == "FAIL" for c in doc["checks"])


def test_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "brstforms.cli", "koszul", "--dim", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_OK, proc.stderr
    assert "betti" in proc.stdout


def test_pure_python_backend_gives_the_same_answer():
    argv = [sys.executable, "-m", "brstforms.cli", "nilpotency", "-i", "su2", "--format", "json"]
    env = dict(os.environ, BRSTFORMS_PURE_PYTHON="1")
    pure = subprocess.run(argv, capture_output=True, text=True, env=env, check=False)
    default = subprocess.run(argv, capture_output=True, text=True, check=False)
    assert pure.returncode == default.returncode == EXIT_OK
    assert json.loads(pure.stdout) == json.loads(default.stdout)
    probe = subprocess.run([sys.executable, "-c", "import brstforms; print(brstforms.BACKEND)"],
                           capture_output=True, text=True, env=env, check=False)
    assert probe.stdout.strip() == "python"


def test_ym_suite_reports_the_failing_checks():
    code, doc = call_json("ym-suite")
    assert code == EXIT_FAIL
    failing = sorted(c["name"] for c in doc["checks"] if c["status"] == "FAIL")
    assert failing == ["T.abelian", "variation.P"]
