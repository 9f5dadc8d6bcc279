"""Pure-Python iteration kernels (reference implementation and fallback).

A prepared game is a pair ``(col_moves, row_moves)`` as produced by
:class:`tropgame.linalg.MinMaxOperator`.  Vectors are lists whose entries are
Python ints or ``-inf``.
"""
from .semiring import BOTTOM

ALL_NEGATIVE, FIXED_POINT, PARTIAL_FIXED_POINT, HORIZON = range(4)


def apply_f(col_moves, row_moves, x):
    bx = []
    for moves in row_moves:
        best = BOTTOM
        for k, b in moves:
            xk = x[k]
            if xk != BOTTOM and b + xk > best:
                best = b + xk
        bx.append(best)
    out = []
    for moves in col_moves:
        best = None
        for i, a in moves:
            y = bx[i]
            s = BOTTOM if y == BOTTOM else y - a
            if best is None or s < best:
                best = s
        out.append(best)
    return out


def apply_g(col_moves, row_moves, x):
    return [min(a, b) for a, b in zip(apply_f(col_moves, row_moves, x), x)]


def iterate(col_moves, row_moves, x, steps):
    x = list(x)
    for _ in range(steps):
        x = apply_f(col_moves, row_moves, x)
    return x


def power(col_moves, row_moves, horizon, record=True):
    """Run the power iteration ``x <- min(f(x), x)`` from ``x = 0``.

    Returns ``(code, k, x_k, witness, iterates)``.
    """
    n = len(col_moves)
    x = [0] * n
    iterates = [list(x)] if record else []
    k = 0
    while True:
        if all(v < 0 for v in x):
            return ALL_NEGATIVE, k, x, None, iterates
        if k >= horizon:
            return HORIZON, k, x, None, iterates
        nxt = apply_g(col_moves, row_moves, x)
        if nxt == x:
            return FIXED_POINT, k, x, list(x), iterates
        dropped = [j for j in range(n) if nxt[j] < x[j]]
        if record:
            iterates.append(list(nxt))
        if 0 < len(dropped) < n:
            y = list(x)
            for j in dropped:
                y[j] = BOTTOM
            if apply_g(col_moves, row_moves, y) == y:
                return PARTIAL_FIXED_POINT, k, nxt, y, iterates
        x = nxt
        k += 1


def fixpoint(col_moves, row_moves, x0, max_iter):
    """Iterate ``x <- min(f(x), x)`` until stationary; ``None`` past ``max_iter``."""
    x = list(x0)
    for it in range(max_iter + 1):
        nxt = apply_g(col_moves, row_moves, x)
        if nxt == x:
            return x, it
        x = nxt
    return None, max_iter
