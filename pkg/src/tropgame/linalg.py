"""Tropical matrices, residuation and min-max operators ``f = A^# B``.

A system ``Ax <= Bx`` (tropically) is equivalent to ``x <= f(x)`` where
``f(x) = A^# (B x)`` and ``(A^# y)_j = min_i (-A_ij + y_i)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .semiring import (
    BOTTOM,
    TOP,
    ExtNumber,
    ZERO,
    ext_add,
    ext_mul,
    format_ext,
    format_weight,
    inject,
    project,
)


class DimensionError(ValueError):
    pass


class AssumptionError(ValueError):
    """Raised when an operator lacks moves for one of the players."""


@dataclass(frozen=True)
class TropMatrix:
    """Dense ``m x n`` matrix of max-plus weights (or of ``ExtNumber``).

    ``row_labels``/``col_labels`` keep track of where rows and columns came
    from after elimination or submatrix extraction.
    """

    entries: tuple
    row_labels: tuple = None
    col_labels: tuple = None

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise DimensionError("matrix dimensions must be positive")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimensionError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        if self.row_labels is None:
            object.__setattr__(self, "row_labels", tuple(range(len(rows))))
        if self.col_labels is None:
            object.__setattr__(self, "col_labels", tuple(range(n)))
        if len(self.row_labels) != len(rows) or len(self.col_labels) != n:
            raise DimensionError("label count does not match shape")

    @classmethod
    def from_rows(cls, rows, row_labels=None, col_labels=None) -> "TropMatrix":
        return cls(tuple(tuple(r) for r in rows), row_labels, col_labels)

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return cls(tuple(tuple(0 if i == j else BOTTOM for j in range(n)) for i in range(n)))

    @classmethod
    def ext_identity(cls, n: int) -> "TropMatrix":
        return cls(tuple(tuple(inject(0) if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple:
        return (self.m, self.n)

    @property
    def is_ext(self) -> bool:
        return isinstance(self.entries[0][0], ExtNumber)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "TropMatrix":
        return TropMatrix(tuple(zip(*self.entries)), self.col_labels, self.row_labels)

    def submatrix(self, rows: Sequence[int] = None, cols: Sequence[int] = None) -> "TropMatrix":
        rows = range(self.m) if rows is None else list(rows)
        cols = range(self.n) if cols is None else list(cols)
        return TropMatrix(
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
            tuple(self.row_labels[i] for i in rows),
            tuple(self.col_labels[j] for j in cols),
        )

    def project(self) -> "TropMatrix":
        """Magnitudes of an extended matrix."""
        return self.map(project) if self.is_ext else self

    def to_ext(self) -> "TropMatrix":
        """View a max-plus matrix as an all-real extended matrix."""
        return self if self.is_ext else self.map(inject)

    def map(self, fn) -> "TropMatrix":
        return TropMatrix(
            tuple(tuple(fn(a) for a in r) for r in self.entries), self.row_labels, self.col_labels
        )

    def max_abs(self) -> int:
        """Largest modulus of a finite entry (0 if none)."""
        vals = [abs(a) for r in self.project().entries for a in r if a != BOTTOM]
        return max(vals, default=0)

    def __str__(self) -> str:
        fmt = format_ext if self.is_ext else format_weight
        return "\n".join(" ".join(fmt(a) for a in r) for r in self.entries)


def _check_len(vec, size, what):
    if len(vec) != size:
        raise DimensionError(f"{what}: expected length {size}, got {len(vec)}")


def matvec(B: TropMatrix, x: Sequence) -> list:
    """Max-plus product ``(Bx)_i = max_j (B_ij + x_j)``."""
    _check_len(x, B.n, "matvec")
    out = []
    for row in B.entries:
        best = BOTTOM
        for b, xj in zip(row, x):
            if b != BOTTOM and xj != BOTTOM:
                s = b + xj
                if s > best:
                    best = s
        out.append(best)
    return out


def residual_apply(A: TropMatrix, y: Sequence) -> list:
    """Residuated operator ``(A^# y)_j = min_i (-A_ij + y_i)``.

    Terms with ``A_ij = -inf`` contribute ``+inf`` (the convention
    ``(+inf) + (-inf) = +inf``), so a column of ``A`` that is entirely
    ``-inf`` yields ``+inf``.
    """
    _check_len(y, A.m, "residual_apply")
    out = []
    for j in range(A.n):
        best = TOP
        for i in range(A.m):
            a = A.entries[i][j]
            if a == BOTTOM:
                continue
            yi = y[i]
            s = yi if yi == BOTTOM or yi == TOP else yi - a
            if s < best:
                best = s
        out.append(best)
    return out


@dataclass(frozen=True)
class EliminationRecord:
    """Bookkeeping produced by :func:`enforce_assumptions`.

    ``kept`` lists the original column indices that survive, in order;
    ``forced`` the original columns pinned to ``-inf``.
    """

    n_original: int
    kept: tuple
    forced: tuple
    dropped_rows: tuple = ()
    added_trivial: bool = False

    def lift(self, x_reduced: Sequence) -> list:
        """Map a vector of the reduced system back to original coordinates."""
        out = [BOTTOM] * self.n_original
        for j, v in zip(self.kept, x_reduced):
            out[j] = v
        return out

    @property
    def empty(self) -> bool:
        return not self.kept


@dataclass(frozen=True)
class MinMaxOperator:
    """The min-max function ``f = A^# B`` of a deterministic mean payoff game.

    Columns are the states where Min plays (circle nodes), rows the states
    where Max plays (square nodes).  ``record`` is set when the operator is
    the output of :func:`enforce_assumptions`.
    """

    A: TropMatrix
    B: TropMatrix
    record: EliminationRecord = None

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise DimensionError(f"A is {self.A.shape} but B is {self.B.shape}")

    @property
    def m(self) -> int:
        return self.A.m

    @property
    def n(self) -> int:
        return self.A.n

    @cached_property
    def assumption1_ok(self) -> bool:
        return all(any(a != BOTTOM for a in self.A.col(j)) for j in range(self.n))

    @cached_property
    def assumption2_ok(self) -> bool:
        return all(any(b != BOTTOM for b in row) for row in self.B.entries)

    @property
    def is_game(self) -> bool:
        return self.assumption1_ok and self.assumption2_ok

    def require_game(self):
        if not self.assumption1_ok:
            raise AssumptionError("some column of A is identically -inf (Min has no move)")
        if not self.assumption2_ok:
            raise AssumptionError("some row of B is identically -inf (Max has no move)")

    @cached_property
    def max_abs(self) -> int:
        return max(self.A.max_abs(), self.B.max_abs())

    @cached_property
    def col_moves(self) -> tuple:
        """For each column j, the pairs ``(i, A_ij)`` with ``A_ij`` finite."""
        return tuple(
            tuple((i, self.A.entries[i][j]) for i in range(self.m) if self.A.entries[i][j] != BOTTOM)
            for j in range(self.n)
        )

    @cached_property
    def row_moves(self) -> tuple:
        """For each row i, the pairs ``(k, B_ik)`` with ``B_ik`` finite."""
        return tuple(
            tuple((k, b) for k, b in enumerate(row) if b != BOTTOM) for row in self.B.entries
        )

    def __call__(self, x: Sequence) -> list:
        return minmax_apply(self, x)

    def scaled(self, factor: int, shift=0) -> "MinMaxOperator":
        """Operator of the game with payments ``factor * w`` and ``A`` raised by ``shift``.

        The result satisfies ``chi(scaled) = factor * chi(self) - shift``.
        """

        def sa(a):
            return BOTTOM if a == BOTTOM else factor * a + shift

        def sb(b):
            return BOTTOM if b == BOTTOM else factor * b

        return MinMaxOperator(self.A.map(sa), self.B.map(sb), self.record)


def minmax_apply(op: MinMaxOperator, x: Sequence) -> list:
    """Evaluate ``f(x) = A^#(Bx)``.

    Raises :class:`AssumptionError` rather than returning a ``+inf``
    component (which only happens when a column of ``A`` is all ``-inf``).
    """
    _check_len(x, op.n, "minmax_apply")
    bx = []
    for moves in op.row_moves:
        best = BOTTOM
        for k, b in moves:
            xk = x[k]
            if xk != BOTTOM:
                s = b + xk
                if s > best:
                    best = s
        bx.append(best)
    out = []
    for j, moves in enumerate(op.col_moves):
        if not moves:
            raise AssumptionError(f"column {j + 1} of A is identically -inf; f_{j + 1} = +inf")
        best = TOP
        for i, a in moves:
            y = bx[i]
            s = BOTTOM if y == BOTTOM else y - a
            if s < best:
                best = s
        out.append(best)
    return out


TRIVIAL = "trivial"


def enforce_assumptions(A: TropMatrix, B: TropMatrix) -> MinMaxOperator:
    """Reduce ``Ax <= Bx`` to an equivalent system satisfying both assumptions.

    Trivial rows ``x_j <= x_j`` are appended (their row label is
    ``("trivial", j)``).  Then, scanning rows in index order until a pass
    changes nothing: a row whose right side is identically ``-inf`` pins every
    variable appearing on its left side to ``-inf`` and is deleted; rows whose
    left side became identically ``-inf`` are deleted.
    """
    if A.shape != B.shape:
        raise DimensionError(f"A is {A.shape} but B is {B.shape}")
    m, n = A.shape
    rows_a = [list(r) for r in A.entries]
    rows_b = [list(r) for r in B.entries]
    labels = list(A.row_labels)
    for j in range(n):
        rows_a.append([0 if k == j else BOTTOM for k in range(n)])
        rows_b.append([0 if k == j else BOTTOM for k in range(n)])
        labels.append((TRIVIAL, j))

    alive_cols = [True] * n
    alive_rows = [True] * len(rows_a)
    changed = True
    while changed:
        changed = False
        for i in range(len(rows_a)):
            if not alive_rows[i]:
                continue
            a_live = [j for j in range(n) if alive_cols[j] and rows_a[i][j] != BOTTOM]
            if not a_live:
                alive_rows[i] = False
                changed = True
                continue
            if all(not alive_cols[j] or rows_b[i][j] == BOTTOM for j in range(n)):
                for j in a_live:
                    alive_cols[j] = False
                alive_rows[i] = False
                changed = True

    kept = tuple(j for j in range(n) if alive_cols[j])
    forced = tuple(j for j in range(n) if not alive_cols[j])
    keep_rows = [i for i in range(len(rows_a)) if alive_rows[i]]
    record = EliminationRecord(
        n_original=n,
        kept=kept,
        forced=forced,
        dropped_rows=tuple(labels[i] for i in range(len(rows_a)) if not alive_rows[i]),
        added_trivial=True,
    )
    if not kept or not keep_rows:
        return _EmptyOperator(record)
    col_labels = tuple(A.col_labels[j] for j in kept)
    row_labels = tuple(labels[i] for i in keep_rows)
    new_a = TropMatrix(tuple(tuple(rows_a[i][j] for j in kept) for i in keep_rows), row_labels, col_labels)
    new_b = TropMatrix(tuple(tuple(rows_b[i][j] for j in kept) for i in keep_rows), row_labels, col_labels)
    return MinMaxOperator(new_a, new_b, record)


class _EmptyOperator:
    """Placeholder for a reduced system with no variable left."""

    def __init__(self, record: EliminationRecord):
        self.record = record
        self.n = 0
        self.m = 0

    is_game = False

    def __repr__(self):
        return f"<empty reduced system, forced={self.record.forced}>"


def is_empty_system(op) -> bool:
    return isinstance(op, _EmptyOperator)


def homogenize(A: TropMatrix, B: TropMatrix, c: Sequence, d: Sequence) -> tuple:
    """Append ``c`` and ``d`` as an extra column of ``A`` and ``B``."""
    if A.shape != B.shape:
        raise DimensionError(f"A is {A.shape} but B is {B.shape}")
    _check_len(c, A.m, "homogenize c")
    _check_len(d, A.m, "homogenize d")
    labels = tuple(A.col_labels) + (A.n,)
    a_hat = TropMatrix(tuple(tuple(r) + (ci,) for r, ci in zip(A.entries, c)), A.row_labels, labels)
    b_hat = TropMatrix(tuple(tuple(r) + (di,) for r, di in zip(B.entries, d)), B.row_labels, labels)
    return a_hat, b_hat


def ext_product(A: TropMatrix, x: Sequence[ExtNumber]) -> list:
    """``Ax`` over the extended semiring, for arbitrary ``x``."""
    _check_len(x, A.n, "ext_product")
    out = []
    for row in A.entries:
        acc = ZERO
        for a, xj in zip(row, x):
            acc = ext_add(acc, ext_mul(a, xj))
        out.append(acc)
    return out


def ext_matvec(A: TropMatrix, x: Sequence[ExtNumber]) -> list:
    """``Ax`` over the extended semiring for a real-typed vector ``x``."""
    if any(not xj.is_real for xj in x):
        raise ValueError("ext_matvec expects a real-typed vector")
    return ext_product(A.to_ext(), x)


def check_balance_zero(A: TropMatrix, x: Sequence[ExtNumber]) -> bool:
    """True iff ``Ax`` balances the zero vector (every entry ghost-typed)."""
    return all(e.is_ghost for e in ext_matvec(A, x))


def compose(outer: MinMaxOperator, inner: MinMaxOperator, max_rows: int = 100_000) -> MinMaxOperator:
    """Min-max representation of ``outer . inner``.

    Rows are indexed by a row ``i`` of the outer operator together with a
    choice of Min move for every column that Max can reach from ``i``.
    """
    if outer.n != inner.n:
        raise DimensionError("operators act on different dimensions")
    inner.require_game()
    rows_a, rows_b, labels = [], [], []
    for i, moves in enumerate(outer.row_moves):
        cols = [k for k, _ in moves]
        for choice in itertools.product(*(inner.col_moves[k] for k in cols)):
            new_b = [BOTTOM] * outer.n
            for (k, b1), (i2, a2) in zip(moves, choice):
                for l, b2 in inner.row_moves[i2]:
                    w = b1 - a2 + b2
                    if w > new_b[l]:
                        new_b[l] = w
            rows_a.append(outer.A.entries[i])
            rows_b.append(tuple(new_b))
            labels.append((i, tuple(i2 for i2, _ in choice)))
            if len(rows_a) > max_rows:
                raise ValueError("composition too large")
    return MinMaxOperator(TropMatrix(tuple(rows_a), tuple(labels)), TropMatrix(tuple(rows_b), tuple(labels)))
