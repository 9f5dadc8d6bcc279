"""Command line front end: ``tropgame {cone,poly,game,rank}``.

Exit codes: 0 when the queried property holds (feasible, independent, ...),
1 when it does not, 2 on usage, parse or shape errors.  Indices in reports
are 1-based.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

from . import convexity, games, rank
from .io import ParseError, format_strategy, format_token, parse_matrix, parse_strategy, parse_vector, read_text
from .linalg import AssumptionError, DimensionError, MinMaxOperator
from .semiring import BOTTOM, ExtNumber

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _scale_arg(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("scale must be a positive integer") from None
    if k <= 0:
        raise argparse.ArgumentTypeError("scale must be a positive integer")
    return k


def _load_matrix(path, args, ext=False):
    return parse_matrix(read_text(path), args.scale, ext, source=path)


def _load_vector(path, args, ext=False):
    return parse_vector(read_text(path), args.scale, ext, source=path)


def _unscale(x, scale):
    if isinstance(x, ExtNumber) or x == BOTTOM or scale == 1:
        return x
    return Fraction(x, scale)


def _vec(v, scale=1):
    return [format_token(_unscale(x, scale)) for x in v]


def _one_based(indices):
    return [j + 1 for j in indices]


def _row_name(label):
    if isinstance(label, tuple) and label and label[0] == "trivial":
        return f"t{label[1] + 1}"
    if isinstance(label, tuple):
        return "(" + ",".join(str(x + 1) for x in label) + ")"
    return str(label + 1)


def _certificate(rep):
    """Min strategy on the reduced system, keyed by original indices."""
    if rep.certificate is None:
        return None
    red = rep.reduced
    return {
        str(red.record.kept[p] + 1): _row_name(red.A.row_labels[i])
        for p, i in enumerate(rep.certificate.choice)
    }


class Report:
    def __init__(self, args):
        self.args = args
        self.items = {}
        if args.scale != 1:
            self.items["scale"] = args.scale

    def __setitem__(self, key, value):
        self.items[key] = value

    def emit(self, out):
        if self.args.json:
            out.write(json.dumps(self.items, indent=2, default=str) + "\n")
            return
        for key, value in self.items.items():
            if isinstance(value, (list, tuple)):
                text = " ".join(str(v) for v in value)
            elif isinstance(value, dict):
                text = " ".join(f"{k}:{v}" for k, v in value.items())
            elif isinstance(value, bool):
                text = "yes" if value else "no"
            else:
                text = str(value)
            out.write(f"{key}: {text}".rstrip() + "\n")


def _feasibility(report, rep, scale):
    report["verdict"] = "feasible" if rep.feasible else "infeasible"
    report["support"] = _one_based(rep.support)
    if rep.witness is not None:
        report["witness"] = _vec(rep.witness, scale)
    cert = _certificate(rep)
    if cert is not None:
        report["certificate"] = {"kind": "min", "strategy": cert} if report.args.json else cert
    return EXIT_OK if rep.feasible else EXIT_NO


def cmd_cone(args, report) -> int:
    A = _load_matrix(args.lhs, args)
    B = _load_matrix(args.rhs, args)
    if args.finite:
        x = convexity.finite_solution(A, B)
        report["verdict"] = "finite solution" if x is not None else "no finite solution"
        if x is not None:
            report["witness"] = _vec(x, args.scale)
        return EXIT_OK if x is not None else EXIT_NO
    if args.integer:
        x = convexity.integer_witness(A, B)
        report["verdict"] = "feasible" if x is not None else "infeasible"
        if x is not None:
            report["witness"] = _vec(x)
            report["support"] = _one_based(convexity.support_of(x))
        return EXIT_OK if x is not None else EXIT_NO
    if args.support:
        return _feasibility(report, convexity.cone_support(A, B), args.scale)
    rep = convexity.cone_nontrivial(A, B)
    code = _feasibility(report, rep, args.scale)
    if rep.trace is not None:
        report["stop"] = rep.trace.stop.value
    return code


def cmd_poly(args, report) -> int:
    A = _load_matrix(args.lhs, args)
    B = _load_matrix(args.rhs, args)
    c = _load_vector(args.c, args)
    d = _load_vector(args.d, args)
    if len(c) != A.m or len(d) != A.m:
        raise DimensionError(f"c and d must have {A.m} entries")
    return _feasibility(report, convexity.poly_nonempty(A, B, c, d), args.scale)


def _chi_text(values, scale):
    return [str(Fraction(v) / scale) for v in values]


def cmd_game(args, report) -> int:
    A = _load_matrix(args.lhs, args)
    B = _load_matrix(args.rhs, args)
    op = MinMaxOperator(A, B)
    op.require_game()
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(games.to_dot(op))
    if args.certify:
        s = parse_strategy(read_text(args.certify), source=args.certify)
        vals = games.certify_strategy(op, s)
        report["strategy"] = format_strategy(s)
        report["bound"] = "lower" if s.kind == "max" else "upper"
        report["chi"] = _chi_text(vals, args.scale)
        return EXIT_OK
    if args.winners:
        wins = games.winning_states(op)
        report["winners"] = [j + 1 for j, w in enumerate(wins) if w]
        return EXIT_OK if any(wins) else EXIT_NO
    value = games.solve_exact(op)
    report["chi"] = _chi_text(value.chi, args.scale)
    report["sigma"] = [k + 1 for k in value.sigma.choice]
    report["pi"] = [i + 1 for i in value.pi.choice]
    return EXIT_OK


def cmd_rank(args, report) -> int:
    A = _load_matrix(args.matrix, args, ext=True)
    if args.singular:
        if A.m != A.n:
            raise DimensionError("--singular needs a square matrix")
        per = rank.tropical_permanent(A)
        report["permanent"] = format_token(per)
        report["singular"] = not per.is_invertible
        return EXIT_OK if not per.is_invertible else EXIT_NO
    if args.cramer:
        if A.m != A.n:
            raise DimensionError("--cramer needs a square matrix")
        b = _load_vector(args.cramer, args, ext=True)
        if len(b) != A.n:
            raise DimensionError(f"right-hand side must have {A.n} entries")
        x = rank.cramer_solve(A, b)
        report["verdict"] = "solved" if x is not None else "hypotheses fail"
        if x is not None:
            report["solution"] = _vec(x)
        return EXIT_OK if x is not None else EXIT_NO
    if args.max:
        report["rank"] = rank.tropical_rank(A)
        return EXIT_OK
    if args.exact:
        report["rank"] = rank.submatrix_rank(A)
        return EXIT_OK
    if args.at_least is not None:
        ok = rank.rank_at_least(A, args.at_least)
        report["rank_at_least"] = f"{args.at_least} {'yes' if ok else 'no'}"
        return EXIT_OK if ok else EXIT_NO
    rep = rank.columns_independent(A)
    report["verdict"] = "independent" if rep.independent else "dependent"
    if rep.independent:
        report["rows"] = _one_based(rep.rows)
    else:
        report["witness"] = _vec(rep.witness)
    return EXIT_OK if rep.independent else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document")
    common.add_argument("--scale", type=_scale_arg, default=1, help="multiply every entry by this integer")

    parser = argparse.ArgumentParser(prog="tropgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cone", parents=[common], help="is {x : Ax <= Bx} nontrivial?")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--support", action="store_true", help="maximal support with witness")
    g.add_argument("--witness", action="store_true", help="nonzero witness (default)")
    g.add_argument("--finite", action="store_true", help="look for a finite solution")
    g.add_argument("--integer", action="store_true", help="integer witness of maximal support")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("poly", parents=[common], help="is {x : max(Ax,c) <= max(Bx,d)} nonempty?")
    for name in ("--lhs", "--rhs", "--c", "--d"):
        p.add_argument(name, required=True)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("game", parents=[common], help="solve the mean payoff game of (A, B)")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--value", action="store_true", help="exact values and optimal strategies (default)")
    g.add_argument("--winners", action="store_true", help="states with nonnegative value")
    g.add_argument("--certify", metavar="STRAT_FILE", help="value of the game with one strategy fixed")
    p.add_argument("--dot", metavar="FILE", help="write the game graph in DOT format")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("rank", parents=[common], help="independence, rank, permanents, Cramer")
    p.add_argument("--matrix", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--independent", action="store_true", help="are the columns independent? (default)")
    g.add_argument("--max", action="store_true", help="maximal number of independent columns")
    g.add_argument("--at-least", type=int, metavar="R", help="are some R columns independent?")
    g.add_argument("--exact", action="store_true", help="rank by submatrix enumeration")
    g.add_argument("--singular", action="store_true", help="is the square matrix singular?")
    g.add_argument("--cramer", metavar="RHS", help="solve Ax balancing b")
    p.set_defaults(func=cmd_rank)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        # argparse prints usage and --help itself; keep it on our streams
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = Report(args)
    try:
        code = args.func(args, report)
    except (ParseError, DimensionError, AssumptionError, OSError, ValueError) as exc:
        err.write(f"tropgame: error: {exc}\n")
        return EXIT_ERROR
    report.emit(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
