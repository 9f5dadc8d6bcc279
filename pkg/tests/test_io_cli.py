import io
import json
from fractions import Fraction

import pytest

from instances import FIRST_A, NEG, hyper_rows
from tropgame.cli import main
from tropgame.games import Strategy
from tropgame.io import (
    ParseError,
    format_matrix,
    format_strategy,
    format_vector,
    parse_matrix,
    parse_strategy,
    parse_token,
    parse_vector,
)
from tropgame.linalg import TropMatrix
from tropgame.semiring import ZERO, ghost, inject

FIRST_LHS = "3 2\n2 -inf\n8 -inf\n-inf 0\n"
FIRST_RHS = "3 2\n1 -inf\n-3 -12\n-9 5\n"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split(": ", 1) if ": " in line else (line.rstrip(":"), "") for line in text.splitlines())


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_parse_tokens():
    assert parse_token("-inf") == NEG and parse_token("-oo") == NEG
    assert parse_token("+7") == 7 and parse_token("-3") == -3
    assert parse_token("3g", ext=True) == ghost(3)
    assert parse_token("-inf", ext=True) == ZERO
    assert parse_token("3/2", scale=2) == 3
    with pytest.raises(ParseError):
        parse_token("3g")
    with pytest.raises(ParseError):
        parse_token("3/2")
    with pytest.raises(ParseError):
        parse_token("1/0", scale=2)


def test_round_trip():
    text = format_matrix(FIRST_A)
    assert parse_matrix(text) == FIRST_A
    E = TropMatrix.from_rows([[inject(1), ghost(-2)], [ZERO, inject(0)]])
    assert parse_matrix(format_matrix(E), ext=True) == E
    v = [NEG, 4, -1]
    assert parse_vector(format_vector(v)) == v
    s = Strategy("min", (0, 2, 1))
    assert parse_strategy(format_strategy(s)) == s
    for canonical in (FIRST_LHS, FIRST_RHS, "2 2\n0 1g\n-inf -3\n"):
        assert format_matrix(parse_matrix(canonical, ext="g" in canonical)) == canonical
    assert parse_matrix("# comment\n1 2  # header\n\n0 -inf\n") == TropMatrix.from_rows([[0, NEG]])


def test_parse_error_positions():
    with pytest.raises(ParseError) as info:
        parse_matrix("2 2\n0 1\n1 2x\n", source="m.txt")
    assert (info.value.line, info.value.col) == (3, 3)
    assert "m.txt:line 3:column 3" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse_matrix("2 2\n0 1\n")
    assert "expected 2 rows" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse_matrix("2 2\n0 1\n0\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_matrix("2\n0 1\n")
    with pytest.raises(ParseError):
        parse_strategy("best 1 2")
    with pytest.raises(ParseError):
        parse_strategy("max 0 1")
    with pytest.raises(ParseError):
        parse_vector("\n# nothing\n")


def test_cli_game_first_example(files):
    lhs, rhs = files("A.txt", FIRST_LHS), files("B.txt", FIRST_RHS)
    code, out, _ = run(["game", "--lhs", lhs, "--rhs", rhs])
    assert code == 0
    f = fields(out)
    assert f["chi"] == "-1 5"
    code, out, _ = run(["game", "--lhs", lhs, "--rhs", rhs, "--winners"])
    assert code == 0 and fields(out)["winners"] == "2"
    code, out, _ = run(["game", "--lhs", lhs, "--rhs", rhs, "--json"])
    doc = json.loads(out)
    assert doc["chi"] == ["-1", "5"] and len(doc["sigma"]) == 3 and len(doc["pi"]) == 2


def test_cli_cone_first_example(files):
    lhs, rhs = files("A.txt", FIRST_LHS), files("B.txt", FIRST_RHS)
    code, out, _ = run(["cone", "--lhs", lhs, "--rhs", rhs])
    f = fields(out)
    assert code == 0 and f["verdict"] == "feasible"
    assert f["support"] == "2" and f["witness"] == "-inf 0"
    for flag, verdict in (("--support", "feasible"), ("--integer", "feasible"), ("--finite", "no finite solution")):
        code, out, _ = run(["cone", "--lhs", lhs, "--rhs", rhs, flag])
        assert fields(out)["verdict"] == verdict
        assert code == (0 if verdict == "feasible" else 1)


def test_cli_cone_infeasible_certificate(files):
    lhs = files("A.txt", "3 3\n0 -inf -inf\n-inf -2 -inf\n-inf -2 3\n")
    rhs = files("B.txt", "3 3\n-inf -7/2 -5/2\n-3/2 -inf -5/2\n2 -inf -inf\n")
    code, out, _ = run(["cone", "--lhs", lhs, "--rhs", rhs, "--scale", "2", "--json"])
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] == "infeasible" and doc["scale"] == 2
    assert doc["certificate"]["kind"] == "min" and len(doc["certificate"]["strategy"]) == 3
    code, _, err = run(["cone", "--lhs", lhs, "--rhs", rhs])
    assert code == 2 and "--scale" in err


def test_cli_scale_reports_unscaled_values(files):
    lhs = files("A.txt", "3 3\n0 -inf -inf\n-inf -2 -inf\n-inf -2 -1\n")
    rhs = files("B.txt", "3 3\n-inf -1 0\n1 -inf 0\n2 -inf -inf\n")
    code, out, _ = run(["game", "--lhs", lhs, "--rhs", rhs])
    assert code == 0 and fields(out)["chi"] == "3/2 3/2 3/2"
    strat = files("s.txt", "max 3 3 1\n")
    code, out, _ = run(["game", "--lhs", lhs, "--rhs", rhs, "--certify", strat])
    f = fields(out)
    assert code == 0 and f["chi"] == "3/2 3/2 3/2" and f["bound"] == "lower"
    code, out, _ = run(["game", "--lhs", lhs, "--rhs", rhs, "--scale", "2"])
    assert fields(out)["chi"] == "3/2 3/2 3/2" and fields(out)["scale"] == "2"


def test_cli_dot(files, tmp_path):
    lhs, rhs = files("A.txt", FIRST_LHS), files("B.txt", FIRST_RHS)
    dot = tmp_path / "g.dot"
    code, _, _ = run(["game", "--lhs", lhs, "--rhs", rhs, "--dot", str(dot)])
    text = dot.read_text()
    assert code == 0 and text.startswith("digraph")
    assert text.count("shape=box") == 3 and text.count("shape=circle") == 2


def test_cli_poly(files):
    one, none = files("one.txt", "1 1\n0\n"), files("none.txt", "1 1\n-inf\n")
    zero, bottom = files("c.txt", "0\n"), files("d.txt", "-inf\n")
    code, out, _ = run(["poly", "--lhs", none, "--rhs", one, "--c", zero, "--d", bottom])
    assert code == 0 and fields(out)["verdict"] == "feasible"
    code, out, _ = run(["poly", "--lhs", one, "--rhs", none, "--c", zero, "--d", bottom])
    assert code == 1 and fields(out)["verdict"] == "infeasible"
    code, _, err = run(["poly", "--lhs", one, "--rhs", none, "--c", zero])
    assert code == 2 and "--d" in err


def test_cli_rank(files):
    abcd = files("abcd.txt", format_matrix(hyper_rows("abcd")))
    abce = files("abce.txt", format_matrix(hyper_rows("abce")))
    code, out, _ = run(["rank", "--matrix", abcd])
    assert code == 1 and fields(out)["verdict"] == "dependent" and fields(out)["witness"] == "0 -2 -1"
    code, out, _ = run(["rank", "--matrix", abce])
    assert code == 0 and fields(out)["verdict"] == "independent"
    assert run(["rank", "--matrix", abcd, "--max"])[1] == "rank: 2\n"
    assert run(["rank", "--matrix", abcd, "--exact"])[1] == "rank: 2\n"
    assert run(["rank", "--matrix", abce, "--at-least", "3"])[0] == 0
    assert run(["rank", "--matrix", abcd, "--at-least", "3"])[0] == 1
    sq = files("sq.txt", "2 2\n0 0g\n-inf 1\n")
    code, out, _ = run(["rank", "--matrix", sq, "--singular"])
    assert code == 1 and fields(out)["permanent"] == "1"
    sing = files("sing.txt", "2 2\n0 0\n0 0\n")
    assert run(["rank", "--matrix", sing, "--singular"])[0] == 0
    diag = files("diag.txt", "2 2\n2 -inf\n-inf 3\n")
    rhs = files("b.txt", "5 5\n")
    code, out, _ = run(["rank", "--matrix", diag, "--cramer", rhs])
    assert code == 0 and fields(out)["solution"] == "3 2"
    assert run(["rank", "--matrix", sing, "--cramer", rhs])[0] == 1
    assert run(["rank", "--matrix", abcd, "--singular"])[0] == 2


def test_cli_errors(files):
    bad = files("bad.txt", "1 2\n0 2x\n")
    good = files("good.txt", "1 2\n0 1\n")
    code, _, err = run(["cone", "--lhs", bad, "--rhs", good])
    assert code == 2 and "line 2" in err and "column 3" in err
    assert run(["cone", "--lhs", good, "--rhs", files("wide.txt", "1 3\n0 0 0\n")])[0] == 2
    assert run(["cone", "--lhs", good, "--rhs", "/nonexistent/file"])[0] == 2
    assert run(["game", "--lhs", files("z.txt", "1 2\n0 -inf\n"), "--rhs", good])[0] == 2
    assert run(["game", "--lhs", good, "--rhs", good, "--scale", "0"])[0] == 2
    assert run([])[0] == 2


def test_fraction_chi_text_is_exact(files):
    # a 2-cycle of weight 1 gives mean 1/2
    lhs = files("A.txt", "2 2\n0 -inf\n-inf 0\n")
    rhs = files("B.txt", "2 2\n-inf 1\n0 -inf\n")
    code, out, _ = run(["game", "--lhs", lhs, "--rhs", rhs])
    assert code == 0 and fields(out)["chi"] == f"{Fraction(1, 2)} {Fraction(1, 2)}"
