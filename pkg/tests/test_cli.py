import json

import pytest

from omegarb.cli import main
from omegarb.omega import parse_structure, serialize_structure
from omegarb.tables import op
from omegarb.omega import OmegaStructure


FAMILY = """\
size = 2
labels = a b
left  = [[0,1],[1,0]]
right = [[0,1],[1,0]]
lhd   = [[0,1],[0,1]]
rhd   = [[0,0],[1,1]]
dot   = [[0,1],[1,0]]
lambda = [[1,1],[1,1]]
"""

ALGEBRA = """\
basis = [1, x]
unit = 1
commutative = true
mult = [[{0:1},{1:1}],[{1:1},{}]]
"""


@pytest.fixture
def family_file(tmp_path):
    path = tmp_path / "family.txt"
    path.write_text(FAMILY)
    return str(path)


@pytest.fixture
def algebra_file(tmp_path):
    path = tmp_path / "poly.txt"
    path.write_text(ALGEBRA)
    return str(path)


def test_check_pass_and_fail_exit_codes(family_file, tmp_path, capsys):
    assert main(["check", family_file, "--level", "lambda-ets"]) == 0
    assert "PASS" in capsys.readouterr().out
    broken = tmp_path / "broken.txt"
    broken.write_text(FAMILY.replace("rhd   = [[0,0],[1,1]]", "rhd   = [[0,1],[0,1]]"))
    assert main(["check", str(broken), "--level", "eds"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "witness" in out


def test_check_json_schema(family_file, capsys):
    assert main(["check", family_file, "--level", "maps", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True and payload["violations"] == []


def test_check_usage_errors(tmp_path, capsys):
    missing = tmp_path / "nope.txt"
    assert main(["check", str(missing)]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("size = 2\nleft = [[0,0],[0,5]]\n")
    assert main(["check", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_product_three_term_expansion(family_file, capsys):
    assert main(["product", "--omega", family_file,
                 "--expr", "([a](|)) * ([b](|))"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "([b](|)) + ([b]([a](|))) + ([b]([b](|)))"


def test_product_round_trip(family_file, capsys):
    expr = "(| x |) + 2/3*(|)"
    assert main(["product", "--omega", family_file, "--expr", expr]) == 0
    first = capsys.readouterr().out.strip()
    assert main(["product", "--omega", family_file, "--expr", first]) == 0
    assert capsys.readouterr().out.strip() == first


def test_product_weight_zero_flag(family_file, capsys):
    assert main(["product", "--omega", family_file, "--weight-zero",
                 "--expr", "([a](|)) * ([b](|))"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "([b]([a](|))) + ([b]([b](|)))"


def test_words_command(family_file, algebra_file, capsys):
    assert main(["words", "--omega", family_file, "--algebra", algebra_file,
                 "--expr", "1 [a] x * 1 [b] x"]) == 0
    out = capsys.readouterr().out.strip()
    assert out != ""
    # round trip
    assert main(["words", "--omega", family_file, "--algebra", algebra_file,
                 "--expr", out]) == 0
    assert capsys.readouterr().out.strip() == out


def test_enumerate_diff_match_and_mismatch(tmp_path, capsys):
    assert main(["enumerate", "--level", "ets", "--size", "2",
                 "--diff", "fixtures/ets2.json", "--out", str(tmp_path / "e.txt")]) == 0
    err = capsys.readouterr().err
    assert "exact match" in err
    # a doctored fixture file must make the diff fail
    data = json.loads(open("fixtures/ets2.json").read())
    data["classes"] = data["classes"][:-1]
    doctored = tmp_path / "doctored.json"
    doctored.write_text(json.dumps(data))
    assert main(["enumerate", "--level", "ets", "--size", "2",
                 "--diff", str(doctored), "--out", str(tmp_path / "e2.txt")]) == 1


def test_enumerate_json_payload(capsys):
    assert main(["enumerate", "--level", "eds", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["raw_count"] == 45 and payload["class_count"] == 24
    assert {"left", "right", "lhd", "rhd"} <= set(payload["classes"][0])


def test_verify_tables_command(capsys):
    assert main(["verify-tables", "--samples", "0,1,1/2"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_dendriform_command(family_file):
    assert main(["dendriform", "--omega", family_file, "--samples", "4"]) == 0


def test_evaluate_command(family_file, tmp_path, capsys):
    subst = tmp_path / "subst.txt"
    subst.write_text("x = ([a](|))\ny = (| x |)\n")
    assert main(["evaluate", "--omega", family_file, "--expr", "(| x |)",
                 "--subst", str(subst)]) == 0
    assert capsys.readouterr().out.strip() == "([a](|))"


def test_expression_parse_error_exit_code(family_file, capsys):
    assert main(["product", "--omega", family_file, "--expr", "(| x"]) == 2
    assert "error:" in capsys.readouterr().err


def test_structure_round_trip_through_serializer(family_file):
    s = parse_structure(open(family_file).read())
    assert parse_structure(serialize_structure(s)) == s
    assert s.rhd == op("aabb")
    assert isinstance(s, OmegaStructure)
