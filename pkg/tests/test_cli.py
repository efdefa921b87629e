import io
import json
import re
import shlex
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from valdist.cli import run

SCHEMA = json.loads(resources.files("valdist").joinpath("schema/report.schema.json").read_text())
README = Path(__file__).resolve().parents[1] / "README.md"


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv, "--json")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


# -- documented examples --------------------------------------------------------------


def test_property_h_failure_shows_equal_values():
    code, report = invoke_json("certify", "--poly", "z^4-2z^2", "--criterion", "property-h")
    assert code == 1
    assert report["verdict"] == "not-certified"
    # critical points -1, 0, 1 give values -1, 0, -1: P(1) = P(-1)
    assert any(c["condition"] == "P(-1) != P(1)" and c["lhs"] == c["rhs"] == -1 for c in report["trace"])


def test_family_self_check():
    code, report = invoke_json("family", "p-star", "--n", "3", "--m", "3", "--self-check")
    assert code == 0
    assert report["verdict"] == "certified"


def test_order_of_exp():
    code, report = invoke_json("nev", "order", "--f", "exp(z)", "--rmin", "5", "--rmax", "80", "--points", "12")
    assert code == 0
    assert report["estimate"] == pytest.approx(1.0, abs=0.05)


def _readme_examples():
    block = re.search(r"Examples \(.*?```bash\n(.*?)```", README.read_text(), re.S).group(1)
    cases = []
    for line in block.splitlines():
        command, _, comment = line.partition("#")
        expected = int(re.search(r"exit (\d)", comment).group(1))
        cases.append((shlex.split(command)[1:], expected))
    return cases


@pytest.mark.parametrize("argv, expected", _readme_examples(), ids=lambda v: " ".join(v) if isinstance(v, list) else str(v))
def test_readme_examples(argv, expected):
    assert invoke(*argv)[0] == expected


# -- report contract --------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["certify", "--poly", "z^5 - 5z + 1/3"],
    ["certify", "--poly", "z"],
    ["family", "frank-reinders", "--n", "6", "--c", "3"],
    ["gate", "thesis-amibcha", "m=5", "n=5", "l=3"],
    ["nev", "characteristic", "--f", "z/(1-z^2)", "--points", "4"],
    ["nev", "jensen", "--f", "(z-2)/(z+3)", "--R", "1"],
    ["nev", "cartan", "--f", "z+2"],
    ["nev", "fft", "--f", "z^2", "--rmin", "10", "--rmax", "100", "--points", "6"],
    ["identity", "share", "--f", "u", "--g", "1/u", "--values", "0,1,-1,inf"],
    ["identity", "derivative-sign"],
])
def test_reports_validate_and_are_deterministic(argv):
    first = invoke(*argv, "--json")
    second = invoke(*argv, "--json")
    assert first == second
    report = json.loads(first[1])
    jsonschema.validate(report, SCHEMA)
    assert len(report["fingerprint"]) == 64


def test_fingerprint_depends_on_input():
    _, a = invoke_json("certify", "--poly", "z^3 - 3z")
    _, b = invoke_json("certify", "--poly", "z^3 - 3z + 1")
    assert a["fingerprint"] != b["fingerprint"]


def test_csv_table():
    code, out, _ = invoke("nev", "characteristic", "--f", "z^2", "--radii", "1,2,4", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,m,N,T,err"
    assert len(lines) == 4


def test_csv_rejected_for_certificates():
    code, out, err = invoke("certify", "--poly", "z^3", "--csv")
    assert code == 2 and out == "" and "--csv" in err


def test_text_output_is_default():
    code, out, _ = invoke("identity", "derivative-sign")
    assert code == 0
    assert out.strip() and not out.lstrip().startswith("{")


# -- usage errors -----------------------------------------------------------------------------


@pytest.mark.parametrize("argv, prog", [
    (["certify"], "certify"),
    (["certify", "--poly", "z^2 +"], "certify"),
    (["family", "p-star", "--n", "1", "--m", "3"], "family"),
    (["gate", "mm-thB1", "m=1"], "gate"),
    (["nev", "order", "--f", "exp(z)", "--points", "3"], "order"),
    (["nev", "jensen", "--f", "exp(z)"], "jensen"),
    (["bogus"], "valdist"),
])
def test_usage_errors_exit_two_with_synopsis(argv, prog):
    code, out, err = invoke(*argv)
    assert code == 2
    assert out == ""
    assert "usage:" in err and prog in err


# -- configuration --------------------------------------------------------------------------------


def test_env_tolerance_reaches_report(monkeypatch):
    monkeypatch.setenv("VALDIST_TOL", "1e-12")
    _, report = invoke_json("certify", "--poly", "z^3 - 3z")
    assert report["config"]["separation_tol"] == 1e-12


def test_flag_overrides_env(monkeypatch):
    monkeypatch.setenv("VALDIST_TOL", "1e-12")
    _, report = invoke_json("certify", "--poly", "z^3 - 3z", "--tol", "1e-5")
    assert report["config"]["separation_tol"] == 1e-5


def test_quad_target_flag():
    _, report = invoke_json("nev", "cartan", "--f", "z+2", "--quad-target", "1e-6")
    assert report["config"]["quad_target"] == 1e-6
