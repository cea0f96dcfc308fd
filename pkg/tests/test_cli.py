import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from extplane.cli import main, run_command

GOLDEN = Path(__file__).parent / "golden"


def test_normalize():
    r = run_command(["normalize", "--type", "1", "phi*Theta"])
    assert r.exit_code == 0 and r.status == "value"
    assert r.lines == ["p*Theta*phi + (1 - p*q)*Phi*theta"]


def test_d_and_derive():
    # dθ·φ - θ·dφ with θΦ = qΦθ
    assert run_command(["d", "--type", "1", "theta*phi"]).lines == ["Theta*phi - q*Phi*theta"]
    r = run_command(["derive", "--wrt", "phi", "--type", "1", "theta*phi"])
    assert r.payload["result"] == "-q*theta"


def test_unicode_flag():
    r = run_command(["--unicode", "normalize", "--type", "1", "phi*Theta"])
    assert r.lines == ["p·Θφ + (1 - pq)·Φθ"]


def test_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("theta*phi + p^-1*phi*theta\n"))
    r = run_command(["normalize", "--type", "2", "-"])
    assert r.payload["result"] == "0"


@pytest.mark.parametrize("argv", [
    ["solve-ansatz"],
    ["consistency", "--type", "1"], ["consistency", "--type", "2"],
    ["confluence", "--type", "1"], ["confluence", "--type", "2"],
    ["ybe", "--type", "1"], ["ybe", "--type", "2"],
    ["rcheck", "--type", "1"], ["rcheck", "--type", "2"],
    ["rtt", "--type", "1"], ["rtt", "--type", "2"],
    ["covariance", "--type", "1"], ["covariance", "--type", "2"],
    ["fock", "--type", "1", "--q", "0,2"], ["fock", "--type", "2", "--q", "0.5,0.5"],
    ["normalize", "--type", "1", "theta"], ["d", "--type", "2", "theta"],
    ["derive", "--wrt", "theta", "--type", "1", "theta"],
])
def test_passing_commands_exit_zero(argv):
    r = run_command(argv)
    assert r.exit_code == 0, r.lines


@pytest.mark.parametrize("argv", [
    ["confluence", "--type", "2", "--theta-Phi-sign", "-1"],
    ["consistency", "--type", "2", "--theta-Phi-sign", "-1"],
])
def test_failing_checks_exit_one(argv):
    r = run_command(argv)
    assert r.status == "fail" and r.exit_code == 1
    assert r.lines[-1].startswith("FAIL")


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["ybe"], ["ybe", "--type", "3"], ["normalize", "--type", "1"],
    ["ybe", "--type", "1", "--frobnicate"], ["fock", "--type", "1", "--q", "x,y"],
    ["fock", "--type", "1", "--q", "0,0"], ["normalize", "--type", "1", "theta^-1"],
    ["normalize", "--type", "1", "theta +"], ["d", "--type", "1", "d_theta"],
    ["derive", "--wrt", "psi", "--type", "1", "theta"], ["--output", "xml", "ybe", "--type", "1"],
])
def test_usage_errors_exit_two(argv):
    assert run_command(argv).exit_code == 2


def test_help_is_not_an_error():
    r = run_command(["--help"])
    assert r.exit_code == 0 and "verify-all" in r.payload["help"]


def test_json_output(capsys):
    assert main(["rtt", "--type", "1", "--output", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "rtt" and data["exit_code"] == 0
    assert len(data["payload"]["checks"][0]["details"]["relations"]) == 6


def test_json_value_output(capsys):
    assert main(["--output", "json", "normalize", "--type", "1", "phi*Theta"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "value"
    assert data["payload"]["result"] == "p*Theta*phi + (1 - p*q)*Phi*theta"


def test_usage_error_goes_to_stderr(capsys):
    assert main(["bogus"]) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and "invalid choice" in captured.err


def test_verify_all_matches_golden(capsys):
    assert main(["verify-all", "--output", "json", "--seed", "5"]) == 0
    data = json.loads(capsys.readouterr().out)
    schema = json.loads((GOLDEN / "verify_all.schema.json").read_text())
    jsonschema.validate(data, schema)
    names = [[c["family"], c["name"]] for c in data["payload"]["checks"]]
    assert names == json.loads((GOLDEN / "verify_all_checks.json").read_text())
    assert data["payload"]["seed"] == 5


def test_verify_all_is_deterministic():
    a = run_command(["verify-all", "--seed", "3"]).as_json()
    b = run_command(["verify-all", "--seed", "3"]).as_json()
    assert a == b


def test_solve_ansatz_output():
    r = run_command(["solve-ansatz"])
    assert "  F22 = 1 - p*q" in r.lines and "  B22 = 1 - p*q" in r.lines
    branches = r.payload["checks"][0]["details"]["branches"]
    assert [b["type"] for b in branches] == ["I", "II"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "extplane", "ybe", "--type", "2"],
                          capture_output=True, text=True, env={"NO_COLOR": "1", "PATH": ""})
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("PASS  ybe: type II")
    assert "\033[" not in proc.stdout


def test_exact_coefficient_json_matches_schema_defs():
    schema = json.loads((GOLDEN / "verify_all.schema.json").read_text())

    def sub(name):
        return {"$defs": schema["$defs"], "$ref": f"#/$defs/{name}"}

    rtt = run_command(["rtt", "--type", "1"]).payload["checks"][0]["details"]
    for rel in rtt["relation_terms"]:
        jsonschema.validate(rel, sub("expr"))
    ansatz = run_command(["solve-ansatz"]).payload["checks"][0]["details"]
    for branch in ansatz["branches"]:
        for coeff in branch["coefficient_terms"].values():
            jsonschema.validate(coeff, sub("laurent"))
    value = run_command(["normalize", "--type", "1", "phi*Theta"]).payload
    jsonschema.validate(value["result_terms"], sub("expr"))
