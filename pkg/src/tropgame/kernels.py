"""Dispatch between the compiled iteration kernels and the Python fallback.

The compiled module is used when it imports and when every intermediate
value provably fits in 61 bits; otherwise the arbitrary-precision Python
loops run.  Set ``TROPGAME_PURE_PYTHON=1`` to disable the extension.
"""
from __future__ import annotations

import os

from . import _pykernels
from .semiring import BOTTOM

ALL_NEGATIVE = _pykernels.ALL_NEGATIVE
FIXED_POINT = _pykernels.FIXED_POINT
PARTIAL_FIXED_POINT = _pykernels.PARTIAL_FIXED_POINT
HORIZON = _pykernels.HORIZON

_ckernels = None
if not os.environ.get("TROPGAME_PURE_PYTHON"):
    try:
        from . import _ckernels  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        _ckernels = None

HAVE_EXTENSION = _ckernels is not None

_LIMIT = 1 << 61
_NEG = -(1 << 62)


def backend() -> str:
    return "cython" if HAVE_EXTENSION else "python"


class Prepared:
    """CSR view of an operator, built once per operator."""

    def __init__(self, op):
        self.col_moves = op.col_moves
        self.row_moves = op.row_moves
        self.n = op.n
        self.max_abs = op.max_abs
        self._arrays = None

    def arrays(self):
        if self._arrays is None:
            import numpy as np

            col_ptr, col_row, col_a = [0], [], []
            for moves in self.col_moves:
                for i, a in moves:
                    col_row.append(i)
                    col_a.append(a)
                col_ptr.append(len(col_row))
            row_ptr, row_col, row_b = [0], [], []
            for moves in self.row_moves:
                for k, b in moves:
                    row_col.append(k)
                    row_b.append(b)
                row_ptr.append(len(row_col))
            self._arrays = tuple(
                np.array(v, dtype=np.int64) for v in (col_ptr, col_row, col_a, row_ptr, row_col, row_b)
            )
        return self._arrays

    def fits(self, start_abs: int, steps: int) -> bool:
        if not isinstance(self.max_abs, int) or not isinstance(start_abs, int):
            return False
        return start_abs + (steps + 2) * 2 * self.max_abs < _LIMIT


def _to_c(x):
    return [_NEG if v == BOTTOM else v for v in x]


def _from_c(x):
    return [BOTTOM if v <= -_LIMIT else int(v) for v in x]


def _start_abs(x):
    vals = [abs(v) for v in x if v != BOTTOM]
    if any(not isinstance(v, int) for v in vals):
        return None
    return max(vals, default=0)


def iterate(prep: Prepared, x0, steps: int, use_extension: bool = None) -> list:
    """``f^steps(x0)``."""
    start = _start_abs(x0)
    if _want_c(use_extension) and start is not None and prep.fits(start, steps):
        return _from_c(_ckernels.iterate(*prep.arrays(), _to_c(x0), steps))
    return _pykernels.iterate(prep.col_moves, prep.row_moves, x0, steps)


def power(prep: Prepared, horizon: int, record: bool = True, use_extension: bool = None):
    """Power iteration of ``g = min(f, id)`` from 0; see ``_pykernels.power``."""
    if _want_c(use_extension) and prep.fits(0, horizon):
        code, k, x, y, its = _ckernels.power(*prep.arrays(), horizon, record)
        return code, k, _from_c(x), None if y is None else _from_c(y), [_from_c(v) for v in its]
    return _pykernels.power(prep.col_moves, prep.row_moves, horizon, record)


def fixpoint(prep: Prepared, x0, max_iter: int, use_extension: bool = None):
    """Iterate ``g`` from ``x0`` until stationary (``(None, max_iter)`` on failure)."""
    start = _start_abs(x0)
    # one step lowers the least finite coordinate by at most 2 * max_abs
    if _want_c(use_extension) and start is not None and prep.fits(start, max_iter):
        x, it = _ckernels.fixpoint(*prep.arrays(), _to_c(x0), max_iter)
        return (None if x is None else _from_c(x)), it
    return _pykernels.fixpoint(prep.col_moves, prep.row_moves, x0, max_iter)


def _want_c(flag) -> bool:
    if flag is None:
        return HAVE_EXTENSION
    if flag and not HAVE_EXTENSION:
        raise RuntimeError("compiled kernels are not available")
    return bool(flag)
