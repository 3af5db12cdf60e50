import io
import json

import pytest

from fricke.cli import main
from fricke.poly import parse_poly


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_trace():
    assert run("trace", "-n", "2", "A^2") == (0, "a^2 - 2\n", "")


def test_trace_no_cache():
    assert run("--no-cache", "trace", "-n", "3", "ACB")[1] == "-a*b*c + a*bc + b*ac + c*ab - abc\n"


def test_basic_words():
    code, out, _ = run("basic-words", "-n", "3")
    assert code == 0
    assert [line.split("\t")[1] for line in out.splitlines()] == ["a", "b", "c", "ab", "ac", "bc", "abc"]


def test_ideal_text_and_round_trip():
    code, out, _ = run("ideal", "-n", "4")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 6
    for line in lines:
        name, poly = line.split(": ")
        assert parse_poly(poly, 4).degree_in(["cd", "abc", "abd", "acd", "bcd", "abcd"].index(name) + 9) == 2


def test_ideal_n3_single_generator():
    code, out, _ = run("ideal", "-n", "3")
    assert code == 0 and len(out.splitlines()) == 1
    assert "abc^2" in out and out.rstrip().endswith("- 4")


def test_ideal_json():
    code, out, _ = run("ideal", "-n", "3", "--json")
    doc = json.loads(out)
    assert doc["n"] == 3 and doc["variables"][-1] == "abc"
    (g,) = doc["generators"]
    assert g["target"] == "abc" and g["case"] == 2 and g["octet"] == ["A", "B", "AB", "C"]


def test_map_json():
    code, out, _ = run("map", "-n", "2", "T", "--json")
    assert json.loads(out) == {"n": 2, "word": "T", "components": {"a": "ab", "b": "b", "ab": "b*ab - a"}}


def test_map_text():
    code, out, _ = run("map", "-n", "3", "R")
    assert code == 0 and "abc -> abc" in out


def test_jacdet():
    assert run("jacdet", "-n", "4", "T") == (0, "1\n", "")
    assert run("jacdet", "-n", "2", "I")[1] == "-1\n"


def test_abelianize():
    code, out, _ = run("abelianize", "-n", "2", "P")
    assert code == 0 and out.splitlines()[-1] == "det -1"


def test_verify_pass_and_fail():
    code, out, _ = run("verify", "--kind", "magnus", "-n", "4", "--samples", "100", "--seed", "7")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = run("verify", "--kind", "ideal", "-n", "3", "--samples", "3", "--seed", "1", "--tol", "0")
    assert code == 1 and json.loads(out)["pass"] is False


def test_verify_deterministic():
    a = run("verify", "--kind", "equivariance", "-n", "3", "--samples", "5", "--seed", "3")
    b = run("verify", "--kind", "equivariance", "-n", "3", "--samples", "5", "--seed", "3")
    assert a == b


def test_witness():
    code, out, _ = run("witness")
    doc = json.loads(out)
    assert code == 0
    assert doc["n4_rank"] == 6 and doc["n4_dimension"] == 9
    assert abs(doc["commutator_trace"] + 0.5598) <= 5e-5


def test_gama_control():
    assert run("gama-control") == (0, "det 1/2*b\nintegral false\n", "")


@pytest.mark.parametrize("argv,fragment", [
    (("trace", "-n", "2", "AB?"), "position 2"),
    (("trace", "-n", "2", "AC"), "position 1"),
    (("map", "-n", "3", "TQ"), "position 1"),
    (("ideal", "-n", "1"), "rank"),
    (("ideal", "-n", "11"), "rank"),
    (("verify", "--kind", "nope", "-n", "3"), "invalid choice"),
    (("verify", "--kind", "ideal", "-n", "3", "--samples", "0"), "samples"),
    (("frobnicate",), "invalid choice"),
    ((), "required"),
])
def test_usage_errors(argv, fragment):
    code, out, err = run(*argv)
    assert code == 2 and out == ""
    assert fragment in err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "Nielsen" in capsys.readouterr().out
