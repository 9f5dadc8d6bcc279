"""Tropical cones and polyhedra decided through mean payoff games.

A cone ``{x : Ax <= Bx}`` contains a vector with ``x_j`` finite exactly when
Max wins the associated game from circle ``j``.  All witnesses returned here
are re-checked against the original inequalities before being reported.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .games import (
    PowerTrace,
    SolverError,
    Stop,
    Strategy,
    power_algorithm,
    solve_exact,
    winning_states,
)
from .linalg import (
    DimensionError,
    MinMaxOperator,
    TropMatrix,
    enforce_assumptions,
    homogenize,
    is_empty_system,
    matvec,
)
from . import kernels
from .semiring import BOTTOM


@dataclass(frozen=True)
class FeasibilityReport:
    """Answer to a feasibility question with its evidence.

    ``support`` and ``witness`` use the original (0-based) coordinates.  For
    an infeasible answer, ``certificate`` is a Min strategy on ``reduced``
    (the preprocessed operator) whose one-player values bound the game
    values from above; it is ``None`` when preprocessing already eliminated
    every variable.
    """

    feasible: bool
    support: tuple
    witness: Optional[tuple]
    certificate: Optional[Strategy] = None
    reduced: object = None
    trace: Optional[PowerTrace] = None


def satisfies(A: TropMatrix, B: TropMatrix, x: Sequence, c=None, d=None) -> bool:
    """True iff ``max(Ax, c) <= max(Bx, d)`` componentwise."""
    lhs, rhs = matvec(A, x), matvec(B, x)
    if c is not None:
        lhs = [max(a, b) for a, b in zip(lhs, c)]
    if d is not None:
        rhs = [max(a, b) for a, b in zip(rhs, d)]
    return all(a <= b for a, b in zip(lhs, rhs))


def support_of(x: Sequence) -> tuple:
    return tuple(j for j, v in enumerate(x) if v != BOTTOM)


def _check_shapes(A, B):
    if A.shape != B.shape:
        raise DimensionError(f"A is {A.shape} but B is {B.shape}")


def _losing_certificate(red):
    return solve_exact(red).pi


def cone_nontrivial(A: TropMatrix, B: TropMatrix) -> FeasibilityReport:
    """Does ``Ax <= Bx`` have a solution other than the zero vector?"""
    _check_shapes(A, B)
    red = enforce_assumptions(A, B)
    if is_empty_system(red):
        return FeasibilityReport(False, (), None, None, red)
    trace = power_algorithm(red)
    if trace.stop is Stop.ALL_NEGATIVE:
        return FeasibilityReport(False, (), None, _losing_certificate(red), red, trace)
    if trace.stop is Stop.HORIZON:
        rep = cone_support(A, B)
        return FeasibilityReport(rep.feasible, rep.support, rep.witness, None, red, trace)
    x = red.record.lift(trace.witness)
    if not satisfies(A, B, x) or not support_of(x):
        raise SolverError("power witness fails the original inequalities")
    return FeasibilityReport(True, support_of(x), tuple(x), None, red, trace)


def _fixpoint_witness(A: TropMatrix, B: TropMatrix, S: Sequence[int]) -> list:
    """Integer solution with support exactly ``S`` (assumed to be the support)."""
    n = A.n
    sub = enforce_assumptions(A.submatrix(cols=S), B.submatrix(cols=S))
    if is_empty_system(sub) or len(sub.record.kept) != len(S):
        raise SolverError("support set does not survive preprocessing")
    size = sub.n + sub.m
    guard = 10 * sub.n * (4 * size * size * sub.max_abs + 1) + 10
    z, _ = kernels.fixpoint(kernels.Prepared(sub), [0] * sub.n, guard)
    if z is None:
        raise SolverError("fixed-point iteration did not stabilize")
    x = [BOTTOM] * n
    for p, v in zip(sub.record.kept, z):
        x[S[p]] = v
    return x


def cone_support(A: TropMatrix, B: TropMatrix) -> FeasibilityReport:
    """Support of the cone ``Ax <= Bx`` with a witness realizing all of it."""
    _check_shapes(A, B)
    red = enforce_assumptions(A, B)
    if is_empty_system(red):
        return FeasibilityReport(False, (), None, None, red)
    wins = winning_states(red)
    S = tuple(red.record.kept[p] for p, w in enumerate(wins) if w)
    if not S:
        return FeasibilityReport(False, (), None, _losing_certificate(red), red)
    x = _fixpoint_witness(A, B, S)
    if not satisfies(A, B, x) or support_of(x) != S:
        raise SolverError("support witness fails verification")
    return FeasibilityReport(True, S, tuple(x), None, red)


def finite_solution(A: TropMatrix, B: TropMatrix) -> Optional[tuple]:
    """A solution in ``Z^n`` if one exists in ``R^n``, else ``None``."""
    rep = cone_support(A, B)
    if rep.feasible and len(rep.support) == A.n:
        return rep.witness
    return None


def integer_witness(A: TropMatrix, B: TropMatrix) -> Optional[tuple]:
    """Integer (or ``-inf``) solution of maximal support, ``None`` if the cone is trivial."""
    rep = cone_support(A, B)
    return rep.witness if rep.feasible else None


def poly_nonempty(A: TropMatrix, B: TropMatrix, c: Sequence, d: Sequence) -> FeasibilityReport:
    """Is ``{x : max(Ax, c) <= max(Bx, d)}`` nonempty?

    Decided on the homogenized cone: the polyhedron is nonempty iff the
    extra coordinate lies in the support.
    """
    _check_shapes(A, B)
    a_hat, b_hat = homogenize(A, B, c, d)
    n = A.n
    rep = cone_support(a_hat, b_hat)
    if not rep.feasible or n not in rep.support:
        cert = None
        red = rep.reduced
        if not is_empty_system(red) and n in red.record.kept:
            cert = rep.certificate or _losing_certificate(red)
        return FeasibilityReport(False, (), None, cert, red)
    y = rep.witness
    x = tuple(BOTTOM if v == BOTTOM else v - y[n] for v in y[:n])
    if not satisfies(A, B, x, c, d):
        raise SolverError("polyhedron witness fails verification")
    return FeasibilityReport(True, support_of(x), x, None, rep.reduced)


class PolySystem(NamedTuple):
    """Affine system ``max(A y, c) <= max(B y, d)``; weights were multiplied by ``scale``."""

    A: TropMatrix
    B: TropMatrix
    c: tuple
    d: tuple
    scale: int


def game_to_polyhedron(op: MinMaxOperator, r: int, lam=0) -> PolySystem:
    """Polyhedron that is nonempty iff ``chi_r(f) >= lam``.

    With ``lam = p/q`` every weight is multiplied by ``q``; the system over
    the coordinates ``J = [n] minus {r}`` reads
    ``p + max(max_j (qA_ij + y_j), qA_ir) <= max(max_j (qB_ij + y_j), qB_ir)``.
    When ``n = 1`` the set ``J`` is empty and is represented by one inert
    all ``-inf`` column.
    """
    if not 0 <= r < op.n:
        raise IndexError(f"state {r} outside 0..{op.n - 1}")
    lam = Fraction(lam)
    p, q = lam.numerator, lam.denominator
    J = [j for j in range(op.n) if j != r]

    def sa(a):
        return BOTTOM if a == BOTTOM else p + q * a

    def sb(b):
        return BOTTOM if b == BOTTOM else q * b

    if J:
        rows_a = [[sa(op.A[i, j]) for j in J] for i in range(op.m)]
        rows_b = [[sb(op.B[i, j]) for j in J] for i in range(op.m)]
    else:
        rows_a = [[BOTTOM] for _ in range(op.m)]
        rows_b = [[BOTTOM] for _ in range(op.m)]
    c = tuple(sa(op.A[i, r]) for i in range(op.m))
    d = tuple(sb(op.B[i, r]) for i in range(op.m))
    return PolySystem(TropMatrix.from_rows(rows_a), TropMatrix.from_rows(rows_b), c, d, q)
