import io
import json
import subprocess
import sys

import pytest

from galattice.arith.parse import ParseError
from galattice.cli.gal import parse_model_file, print_model_file
from galattice.cli.main import main
from galattice.cli.report import LEADING_KEYS, emit_report
from galattice.cli.selftest import bundled_files, run_selftest

FILES = bundled_files()


@pytest.fixture
def gal(tmp_path):
    def write(name, text=None):
        p = tmp_path / name
        p.write_text(FILES[name] if text is None else text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


# -- parsing ------------------------------------------------------------------------

def test_parse_minimal():
    mf = parse_model_file("field Q\nmodel P2 { proj vars: X Y Z ideal: [] }")
    assert list(mf.models) == ["P2"]
    assert mf.models["P2"].variables == ["X", "Y", "Z"]
    assert mf.field.characteristic == 0


def test_missing_brace_reports_line():
    text = "field Q\nmodel P2 { proj vars: X Y Z ideal: []\nchart C { vars: x ideal: [x] }\n"
    with pytest.raises(ParseError) as exc:
        parse_model_file(text)
    assert exc.value.line == 3


def test_duplicate_name():
    text = "field F 5\nmodel E { proj vars: X Y Z ideal: [] }\nmodel E { proj vars: X Y Z ideal: [] }"
    with pytest.raises(ParseError) as exc:
        parse_model_file(text)
    assert "duplicate" in str(exc.value) and exc.value.line == 3


@pytest.mark.parametrize("text", [
    "field Q\nchart C { vars: x ideal: [x*w] }",
    "field Q\nmorphism f: A -> A { X -> X; }",
    "field Q\nmodel A { proj vars: X Y ideal: [] }\nmorphism f: A -> A { X -> X; }",
    "field Q\nmodel A { proj vars: X Y ideal: [] }\nmorphism f: A -> A { X -> X; W -> Y; }",
    "field F 6\n",
    "field Q\nchart C { vars: x t ideal: [] }",
    "field Q\nchart C { vars: x ideal: [x + ] }",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_model_file(text)


def test_error_column():
    with pytest.raises(ParseError) as exc:
        parse_model_file("field Q\nchart C { vars: x ideal: [x $ 1] }")
    assert (exc.value.line, exc.value.col) == (2, 29)


@pytest.mark.parametrize("name", sorted(FILES))
def test_round_trip(name):
    mf = parse_model_file(FILES[name])
    again = parse_model_file(print_model_file(mf))
    assert again == mf
    assert print_model_file(again) == print_model_file(mf)


def test_bundled_contents():
    assert set(FILES) >= {"projective.gal", "elliptic_f5.gal", "elliptic_f7.gal", "charts.gal"}
    assert set(parse_model_file(FILES["projective.gal"]).models) == {"P1", "P2", "P1xP1"}
    assert parse_model_file(FILES["elliptic_f7.gal"]).field.characteristic == 7


def test_default_field_env(monkeypatch):
    monkeypatch.setenv("GAL_DEFAULT_FIELD", "F3")
    assert parse_model_file("chart C { vars: x ideal: [x^3 - t] }").field.characteristic == 3
    assert parse_model_file("field Q\nchart C { vars: x ideal: [] }").field.characteristic == 0
    monkeypatch.setenv("GAL_DEFAULT_FIELD", "F4")
    with pytest.raises(ParseError):
        parse_model_file("chart C { vars: x ideal: [] }")


# -- reports --------------------------------------------------------------------------

def test_emit_key_order_and_stability():
    res = {"checks": [], "zeta": {"b": 1, "a": 2}, "rank": 1, "command": "x", "model": "M"}
    s = emit_report(res, "json")
    assert list(json.loads(s)) == ["command", "model", "rank", "checks", "zeta"]
    assert s == emit_report(dict(reversed(list(res.items()))), "json")
    assert "rank: 1" in emit_report(res, "text")
    assert LEADING_KEYS[0] == "command"


def test_lattice_p2_json(capsys, gal):
    code, out, _ = run_json(capsys, "lattice", "--model", gal("projective.gal"), "--name", "P2", "--degree", "0")
    assert code == 0
    assert list(out)[:7] == ["command", "model", "degree", "rank", "torsion", "certified", "window"]
    assert (out["rank"], out["torsion"], out["certified"]) == (1, [], True)
    code2, out2, _ = run_json(capsys, "lattice", "--model", gal("projective.gal"), "--name", "P2", "--degree", "0")
    assert out2 == out


def test_stdin_model(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(FILES["projective.gal"]))
    code, out, _ = run_json(capsys, "lattice", "--model", "-", "--name", "P1", "--degree", "1")
    assert code == 0 and out["rank"] == 0


def test_parse_failure_exit_code(capsys, gal):
    bad = gal("bad.gal", "field Q\nmodel P { proj vars: X Y ideal: [X*Y }\n")
    code, out, err = run(capsys, "lattice", "--model", bad, "--degree", "0")
    assert code == 2 and out == "" and "line 2" in err


def test_precondition_exit_code(capsys, gal):
    code, _, err = run(capsys, "ga-member", "x", "--model", gal("charts.gal"), "--name", "cusp")
    assert code == 3 and "precondition" in err


def test_require_certified_exit_code(capsys, gal):
    path = gal("elliptic_f5.gal")
    code, out, _ = run(capsys, "lattice", "--model", path, "--name", "E", "--degree", "1", "--rounds", "0",
                       "--require-certified", "--json")
    assert code == 4 and json.loads(out)["certified"] is False
    code, out, _ = run(capsys, "lattice", "--model", path, "--name", "E", "--degree", "1",
                       "--require-certified", "--json")
    assert code == 0 and json.loads(out)["certified"] is True


def test_usage_errors(capsys, gal):
    assert run(capsys, "lattice", "--degree", "0")[0] == 1
    assert run(capsys, "lattice", "--model", gal("projective.gal"), "--degree", "0")[0] == 1
    assert run(capsys, "lattice", "--model", gal("projective.gal"), "--name", "Q7", "--degree", "0")[0] == 1


def test_charpoly_commands(capsys, gal):
    code, out, _ = run_json(capsys, "charpoly", "--model", gal("elliptic_f7.gal"), "--name", "zeta", "--degree", "1")
    assert code == 0 and out["charpoly"] in ("T - 2", "T + 5", "T - 4", "T + 3")
    assert out["integral"] and out["quasi_unipotent"] and out["qu"]["M"] == 3
    code, out, _ = run_json(capsys, "charpoly", "--model", gal("elliptic_f5.gal"), "--name", "inv", "--degree", "1")
    assert out["charpoly"] == "T + 1" and out["qu"]["M"] == 2


def test_invariance_command(capsys, gal):
    code, out, _ = run_json(capsys, "invariance", "--model", gal("projective.gal"), "--name", "P1")
    assert code == 0
    assert len(out["checks"]) == 4 and all(c["passed"] for c in out["checks"])


def test_generic_and_normalize(capsys, gal):
    code, out, _ = run_json(capsys, "generic", "--model", gal("elliptic_f5.gal"), "--name", "E", "--degree", "1")
    assert code == 0 and out["dimension"] == 1
    code, out, _ = run_json(capsys, "normalize", "--model", gal("charts.gal"), "--name", "node")
    assert code == 0 and out["verified"]


def test_ga_member_command(capsys, gal):
    path = gal("charts.gal")
    code, out, _ = run_json(capsys, "ga-member", "x", "--model", path, "--name", "ramified")
    assert out["member"] is True and out["witness"] is None and out["consistent"]
    code, out, _ = run_json(capsys, "ga-member", "1", "--model", path, "--name", "ramified")
    assert out["member"] is False and out["witness"] is not None and out["consistent"]
    code, out, _ = run_json(capsys, "ga-member", "x", "--model", path, "--name", "ramified", "--twist=-1/2")
    assert out["member"] is True


def test_radical_member_command(capsys, gal):
    code, out, _ = run_json(capsys, "radical-member", "x", "--model", gal("charts.gal"), "--name", "ramified",
                            "--fiber")
    assert code == 0 and out["member"] is True


def test_newton_command(capsys):
    code, out, _ = run_json(capsys, "newton", "z^2 - t*z + t^3")
    assert code == 0
    assert out["root_valuations"] == [["2", 1], ["1", 1]]
    assert run(capsys, "newton", "x*y + t")[0] == 1


def test_rigid_cech_command(capsys):
    code, out, _ = run_json(capsys, "rigid-cech", "--seed", "3", "--require-certified")
    assert code == 0 and out["seed"] == 3 and len(out["checks"]) == 50
    code, out2, _ = run_json(capsys, "rigid-cech", "--seed", "3")
    assert out2 == out
    code, out, _ = run_json(capsys, "rigid-cech", "--cocycle", "t^2*z^-1 + t^2", "--verbose")
    assert code == 0 and out["checks"][0]["f_minus"] == "t^2*z^-1"


def test_pn_homotopy_command(capsys):
    code, out, _ = run_json(capsys, "pn-homotopy", "--n", "2", "--N", "5", "--count", "30", "--require-certified")
    assert code == 0 and out["failures"] == 0
    code, out, _ = run_json(capsys, "pn-homotopy", "--n", "1", "--N", "8")
    assert out["h0_basis"] == ["t^%d" % i for i in range(2, 8)]
    assert out["full_dims"] == {"0": 6, "1": 0}


def test_selftest(capsys):
    assert all(c["passed"] for c in run_selftest(0))
    code, out, _ = run_json(capsys, "selftest")
    assert code == 0 and len(out["checks"]) == 5


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "galattice.cli.main", "newton", "z - t", "--json"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "newton"
