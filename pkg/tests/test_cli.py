import json
import subprocess
import sys

import pytest

from pellint.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pi3_text(capsys):
    code, out, _ = run(capsys, "pi3", "--digits", "25")
    assert code == 0
    assert out == "2.418399152312290467458771\n"


def test_pi_text(capsys):
    assert run(capsys, "pi", "--p", "2", "--digits", "10")[:2] == (0, "3.141592654\n")


def test_value_json_schema(capsys):
    code, out, _ = run(capsys, "k", "--p", "2", "--k-expr", "2^(-1/p)", "--digits", "16", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"command", "inputs", "digits", "value", "iterations", "residuals"}
    assert data["command"] == "k"
    assert isinstance(data["value"], str)
    assert data["value"] == "1.854074677301372"


@pytest.mark.parametrize("cmd,expected", [
    ("e", "1.3506438810476755"),
    ("kstar", "1.8540746773013719"),
    ("estar", "1.3506438810476755"),
])
def test_other_integrals(capsys, cmd, expected):
    code, out, _ = run(capsys, cmd, "--p", "2", "--k", "0.7071067811865475244008443621", "--digits", "17")
    assert code == 0
    assert out.strip() == expected


def test_cbrt_expression(capsys):
    code, out, _ = run(capsys, "k", "--p", "3", "--k-expr", "cbrt:0.5", "--digits", "20")
    code2, out2, _ = run(capsys, "k", "--p", "3", "--k-expr", "2^(-1/p)", "--digits", "20")
    assert code == code2 == 0
    assert out == out2


def test_m3(capsys):
    code, out, _ = run(capsys, "m3", "--a", "2", "--b", "2", "--digits", "5")
    assert (code, out) == (0, "2.0000\n")


def test_pi3_json_reports_iterations(capsys):
    code, out, _ = run(capsys, "pi3", "--digits", "40", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["iterations"] >= 2
    assert data["value"].startswith("2.4183991523122904674587")


def test_verify_legendre(capsys):
    code, out, _ = run(capsys, "verify", "legendre", "--p", "3", "--digits", "50", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert float(data["value"]) <= 1e-47
    assert set(data["residuals"]) == {"legendre"}


def test_verify_text_lists_each_identity(capsys):
    code, out, _ = run(capsys, "verify", "agm", "--digits", "30")
    assert code == 0
    names = [line.split()[0] for line in out.splitlines()]
    assert names == ["constancy", "ij_recursion", "j_sum", "k3_agm", "k3_star_agm", "max"]
    assert out.splitlines()[-1].endswith("PASS")


def test_verify_failure_exit_code(capsys, monkeypatch):
    import pellint.cli as cli

    monkeypatch.setattr(cli, "run_suite", lambda name, ctx, p: {"fake": ctx.mpf(1)})
    code, out, _ = run(capsys, "verify", "ke", "--digits", "20")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["pi", "--p", "1"],
    ["pi", "--p", "abc"],
    ["k", "--p", "2", "--k", "1"],
    ["k", "--p", "2", "--k-expr", "sqrt:2"],
    ["pi", "--p", "2", "--digits", "0"],
    ["nonsense"],
    ["k", "--p", "2"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_digits_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("PELLINT_MAX_DIGITS", "8")
    code, _, err = run(capsys, "pi", "--p", "2", "--digits", "9")
    assert code == 2
    assert "[1, 8]" in err
    monkeypatch.setenv("PELLINT_MAX_DIGITS", "200000")
    assert run(capsys, "pi", "--p", "2", "--digits", "5")[0] == 0


def test_numeric_failure_exit_code(capsys, monkeypatch):
    import pellint.cli as cli
    from pellint.errors import ConvergenceError

    def boom(*args, **kwargs):
        raise ConvergenceError("no")

    monkeypatch.setattr(cli, "pi3", boom)
    code, _, err = run(capsys, "pi3")
    assert code == 3
    assert "numerical failure" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pellint", "pi", "--p", "3", "--digits", "25"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "2.418399152312290467458771\n"
