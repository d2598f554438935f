import cmath
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from qgalois.cli import (EXIT_FAILED, EXIT_OK, EXIT_REFUSED, ParamError, main, parse_number,
                         parse_param)
from qgalois.spiral import Spiral


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("text,value", [
    ("0.3", 0.3), ("-1.5", -1.5), ("0.3+0.4i", 0.3 + 0.4j), ("2i", 2j), ("-i", -1j),
    ("1e-2-3i", 0.01 - 3j), ("2@1.5", cmath.rect(2, 1.5)),
])
def test_parse_number(text, value):
    assert abs(parse_number(text) - value) < 1e-15


@pytest.mark.parametrize("text", ["abc", "0.3x", "", "1+", "1@x"])
def test_parse_number_rejects(text):
    with pytest.raises(ParamError):
        parse_number(text)


@pytest.mark.parametrize("text,omega,turn", [
    ("q^0.3", Fraction(3, 10), Fraction(0)),
    ("-q^3/2", Fraction(3, 2), Fraction(1, 2)),
    ("q", Fraction(1), Fraction(0)),
    ("q^-2", Fraction(-2), Fraction(0)),
    ("zeta_6^1*q^1/3", Fraction(1, 3), Fraction(1, 6)),
    ("zeta_4^3*q^0", Fraction(0), Fraction(3, 4)),
])
def test_parse_spiral(text, omega, turn):
    s = parse_param(text)
    assert isinstance(s, Spiral) and s.omega == omega and s.turn == turn


def test_parse_spiral_cartesian_unit():
    s = parse_param("0.6+0.8i*q^0.5")
    assert s.turn is None and abs(s.u - (0.6 + 0.8j)) < 1e-15
    with pytest.raises(ParamError):
        parse_param("2*q^0.5")


def test_classify_c1(capsys):
    code, out, _ = run(["classify", "--q", "0.3", "--a", "q^0.3", "--b", "q^0.7", "--c", "q^0.4"], capsys)
    assert code == EXIT_OK and "C1" in out and "GL2" in out


def test_classify_c4_json(capsys):
    code, out, _ = run(["classify", "--q", "0.5", "--a", "q^2", "--b", "q^0.3", "--c", "q^0.9",
                        "--json"], capsys)
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["schema"] == "qgalois/1"
    assert data["group"]["family"] == "LowerTriangular_full"
    assert data["symmetry_derived"] is False


def test_json_round_trip(capsys):
    _, out, _ = run(["report", "--q", "0.3", "--a", "q^0.3", "--b=-q^1.3", "--c=-q", "--json"], capsys)
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data
    assert data["group"]["family"] == "TorusWithSwap"
    assert len(data["group"]["conjugator"]) == 2
    assert data["witnesses_checked"] == len(data["witnesses"]["local"]) + len(data["witnesses"]["connection"])
    for key in ("case_tag", "group", "witnesses_checked", "checks", "symmetry_derived", "seed"):
        assert key in data


def test_verify_deterministic_all_pass(capsys):
    argv = ["verify", "--q", "0.3", "--a", "q^0.2", "--b", "q^0.3", "--c", "q^1.5", "--seed", "7", "--json"]
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert code1 == code2 == EXIT_OK and out1 == out2
    data = json.loads(out1)
    assert data["group"]["scalar"] == {"kind": "FiniteCyclic", "n": 4}
    assert all(c["status"] in ("pass", "skipped") for c in data["checks"])


def test_m2_family(capsys):
    _, out, _ = run(["classify", "--q", "0.3", "--a", "q^2", "--b", "q^2", "--c", "q", "--json"], capsys)
    assert json.loads(out)["group"]["family"] == "UnipotentUpper"


def test_borderline_exit_code(capsys):
    c = 0.3 ** (1 + 1e-5)
    code, _, err = run(["classify", "--q", "0.3", "--a", "0.5", "--b", "0.7", "--c", repr(c)], capsys)
    assert code == EXIT_REFUSED and "borderline membership" in err


def test_unsupported_exit_code(capsys):
    code, _, err = run(["classify", "--q", "0.3", "--a", "q^0.3", "--b", "q^0.7", "--c", "q^2"], capsys)
    assert code == EXIT_REFUSED and "UnsupportedResonant" in err


def test_failed_check_exit_code(capsys, monkeypatch):
    import qgalois.verify as verify
    monkeypatch.setattr(verify, "verify_system",
                        lambda *a, **k: verify.Check("system_residual", "forced", 1.0, 1e-9, 1))
    code, out, _ = run(["verify", "--q", "0.3", "--a", "q^0.3", "--b", "q^0.7", "--c", "q^0.4"], capsys)
    assert code == EXIT_FAILED and "fail" in out


@pytest.mark.parametrize("argv,flag", [
    (["classify", "--q", "1.5", "--a", "1", "--b", "2", "--c", "3"], "--q"),
    (["classify", "--q", "0.3", "--a", "zz", "--b", "2", "--c", "3"], "--a"),
    (["verify", "--q", "0.3", "--a", "0.5", "--b", "2", "--c", "3", "--annulus", "2,1"], "--annulus"),
    (["classify", "--q", "0.3", "--a", "0.5", "--b", "2"], "--c"),
])
def test_usage_errors(argv, flag, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_annulus_flag(capsys):
    code, out, _ = run(["verify", "--q", "0.3", "--a", "q^0.3", "--b", "q^0.7", "--c", "q^0.4",
                        "--annulus", "0.4,0.9", "--json"], capsys)
    assert code == EXIT_OK


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qgalois", "classify", "--q", "0.3", "--a", "q^2",
                          "--b", "q^2", "--c", "q"], capture_output=True, text=True)
    assert out.returncode == 0 and "UnipotentUpper" in out.stdout


def test_polar_q(capsys):
    code, out, _ = run(["classify", "--q", f"0.5@{math.atan2(0.4, 0.3)}", "--a", "q^0.3",
                        "--b", "q^0.7", "--c", "q^0.4", "--json"], capsys)
    assert code == EXIT_OK and json.loads(out)["group"]["family"] == "GL2"
