"""Text formats for matrices, vectors and strategies.

Matrix files start with a line ``m n`` followed by ``m`` lines of ``n``
tokens.  A token is ``-inf``, an integer ``k``, or ``kg`` for the ghost
``k``.  With a scale factor, rational tokens ``p/q`` are accepted as long as
``scale * p/q`` is an integer.  Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .games import Strategy
from .linalg import TropMatrix
from .semiring import BOTTOM, ZERO, ExtNumber, format_ext, format_weight, ghost, inject

_TOKEN = re.compile(r"^(?:(-inf|-oo)|([+-]?\d+(?:/\d+)?))(g?)$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = None, col: int = None, source: str = None):
        where = []
        if source:
            where.append(source)
        if line is not None:
            where.append(f"line {line}")
        if col is not None:
            where.append(f"column {col}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line, self.col = line, col


def _lines(text):
    """Yield ``(line_no, [(col, token), ...])`` for non-empty lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if toks:
            yield no, toks


def parse_token(tok: str, scale=1, ext: bool = False, line=None, col=None, source=None):
    m = _TOKEN.match(tok)
    if not m:
        raise ParseError(f"bad token {tok!r}", line, col, source)
    inf, num, g = m.groups()
    if g and not ext:
        raise ParseError(f"ghost token {tok!r} not allowed here", line, col, source)
    if inf:
        return ZERO if ext else BOTTOM
    try:
        val = Fraction(num) * scale
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {tok!r}", line, col, source) from None
    if val.denominator != 1:
        hint = "; pass --scale to clear denominators" if scale == 1 else f" after scaling by {scale}"
        raise ParseError(f"token {tok!r} is not an integer{hint}", line, col, source)
    val = val.numerator
    if ext:
        return ghost(val) if g else inject(val)
    return val


def parse_matrix(text: str, scale=1, ext: bool = False, source: str = None) -> TropMatrix:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty matrix file", source=source)
    no, head = lines[0]
    if len(head) != 2:
        raise ParseError("header must be 'm n'", no, 1, source)
    try:
        m, n = int(head[0][1]), int(head[1][1])
    except ValueError:
        raise ParseError("header must contain two integers", no, 1, source) from None
    if m <= 0 or n <= 0:
        raise ParseError("dimensions must be positive", no, 1, source)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} rows, found {len(body)}", body[-1][0] if body else no, None, source)
    rows = []
    for no, toks in body:
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", no, None, source)
        rows.append([parse_token(t, scale, ext, no, c, source) for c, t in toks])
    return TropMatrix.from_rows(rows)


def parse_vector(text: str, scale=1, ext: bool = False, source: str = None) -> list:
    out = []
    for no, toks in _lines(text):
        out.extend(parse_token(t, scale, ext, no, c, source) for c, t in toks)
    if not out:
        raise ParseError("empty vector file", source=source)
    return out


def parse_strategy(text: str, source: str = None) -> Strategy:
    """``max`` or ``min`` followed by 1-based targets, one per node."""
    toks = [(no, c, t) for no, line in _lines(text) for c, t in line]
    if not toks:
        raise ParseError("empty strategy file", source=source)
    no, c, kind = toks[0]
    if kind not in ("max", "min"):
        raise ParseError("strategy must start with 'max' or 'min'", no, c, source)
    choice = []
    for no, c, t in toks[1:]:
        if not re.fullmatch(r"\d+", t) or int(t) < 1:
            raise ParseError(f"bad node index {t!r}", no, c, source)
        choice.append(int(t) - 1)
    return Strategy(kind, tuple(choice))


def format_token(x) -> str:
    return format_ext(x) if isinstance(x, ExtNumber) else format_weight(x)


def format_vector(v) -> str:
    return " ".join(format_token(x) for x in v)


def format_matrix(M: TropMatrix) -> str:
    return f"{M.m} {M.n}\n" + "\n".join(format_vector(r) for r in M.entries) + "\n"


def format_strategy(s: Strategy) -> str:
    return s.kind + " " + " ".join(str(k + 1) for k in s.choice)


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()
