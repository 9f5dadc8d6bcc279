"""Tropical permanents, linear independence, Cramer systems and rank.

Matrices here are usually over the extended semiring; plain max-plus
matrices are read as all-real extended matrices.  Independence of columns
is decided by the game ``f = C^# D`` built in :func:`independence_operator`:
the columns are dependent iff Max has a winning state.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .convexity import cone_nontrivial, cone_support
from .games import PowerTrace, SolverError, solve_exact
from .linalg import (
    DimensionError,
    MinMaxOperator,
    TropMatrix,
    check_balance_zero,
    ext_product,
)
from .semiring import (
    BOTTOM,
    ONE,
    ZERO,
    ExtNumber,
    balances,
    ext_mul,
    ext_sum,
    ghost,
    inject,
)

# --------------------------------------------------------------------------
# Optimal assignment and permanents


@dataclass(frozen=True)
class AssignmentResult:
    """Optimal assignment ``max_sigma sum_i B_{i sigma(i)}``.

    ``permutation[i]`` is the column assigned to row ``i`` (``None`` when
    the value is ``-inf``).  ``uses_ghost`` tells whether the optimal
    permutation goes through a ghost entry (extended input only).
    """

    value: object
    permutation: Optional[tuple]
    unique: bool
    uses_ghost: bool = False


def _require_square(A: TropMatrix):
    if A.m != A.n:
        raise DimensionError(f"square matrix expected, got {A.m}x{A.n}")


def _has_perfect_matching(W) -> bool:
    n = len(W)
    match_col = [None] * n

    def augment(i, seen):
        for j in range(n):
            if W[i][j] != BOTTOM and j not in seen:
                seen.add(j)
                if match_col[j] is None or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    return all(augment(i, set()) for i in range(n))


def _hungarian_max(W):
    """Maximum weight perfect matching on a matrix with a finite perfect matching.

    Returns ``(assignment, u, v, cost)`` where ``cost`` is the minimization
    matrix used and ``u_i + v_j <= cost_ij`` with equality on the assignment.
    """
    n = len(W)
    big_abs = max((abs(w) for r in W for w in r if w != BOTTOM), default=0)
    big = 2 * n * big_abs + 1
    cost = [[big if w == BOTTOM else -w for w in r] for r in W]
    INF = math.inf
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assign = [0] * n
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign, u[1:], v[1:], cost, big


def _has_cycle(succ) -> bool:
    n = len(succ)
    color = [0] * n
    for root in range(n):
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, iter(succ[root]))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color[nxt] == 1:
                return True
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return False


def optimal_assignment(B: TropMatrix) -> AssignmentResult:
    """Optimal assignment with an exact test for a second optimal permutation.

    The Hungarian method yields optimal dual potentials; every optimal
    permutation uses only tight arcs, so another optimum exists iff the
    tight graph has an alternating cycle with respect to the found one.
    """
    _require_square(B)
    ext = B.is_ext
    W = [list(r) for r in B.project().entries]
    n = len(W)
    if not _has_perfect_matching(W):
        return AssignmentResult(BOTTOM, None, False, False)
    assign, u, v, cost, big = _hungarian_max(W)
    value = sum(W[i][assign[i]] for i in range(n))
    row_of_col = [0] * n
    for i, j in enumerate(assign):
        row_of_col[j] = i
    succ = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if j != assign[i] and cost[i][j] != big and cost[i][j] == u[i] + v[j]:
                succ[i].append(row_of_col[j])
    unique = not _has_cycle(succ)
    uses_ghost = ext and any(B[i, assign[i]].is_ghost for i in range(n))
    return AssignmentResult(value, tuple(assign), unique, uses_ghost)


def is_tropically_singular(B: TropMatrix) -> bool:
    """True iff the optimal assignment is ``-inf`` or attained twice
    (for extended input: iff the permanent is not invertible)."""
    if B.is_ext:
        return not tropical_permanent(B).is_invertible
    res = optimal_assignment(B)
    return res.value == BOTTOM or not res.unique


def tropical_permanent(A: TropMatrix) -> ExtNumber:
    _require_square(A)
    A = A.to_ext()
    res = optimal_assignment(A)
    if res.value == BOTTOM:
        return ZERO
    if not res.unique or res.uses_ghost:
        return ghost(res.value)
    return inject(res.value)


def enumerated_permanent(A: TropMatrix) -> ExtNumber:
    """Permanent by summing over all ``n!`` permutations (oracle)."""
    _require_square(A)
    A = A.to_ext()
    n = A.n
    terms = []
    for perm in itertools.permutations(range(n)):
        t = ONE
        for i, j in enumerate(perm):
            t = ext_mul(t, A[i, j])
        terms.append(t)
    return ext_sum(terms)


# --------------------------------------------------------------------------
# Independence


class TrivialDependence(Exception):
    """A column made only of ghost or zero entries: the columns are dependent."""

    def __init__(self, column: int):
        super().__init__(f"column {column + 1} has no real nonzero entry")
        self.column = column


def independence_operator(A: TropMatrix) -> MinMaxOperator:
    """Game whose Max player wins iff the columns of ``A`` are dependent.

    Rows are labelled ``(i, j)``: ``C`` has ``B_ij`` at column ``j`` when
    ``A_ij`` is real nonzero, ``D`` has ``B_ik`` at every ``k != j``, where
    ``B`` is the matrix of magnitudes.  Thus
    ``f_j(x) = min_{(i,j) real} (-B_ij + max_{k != j} (B_ik + x_k))``.
    """
    A = A.to_ext()
    m, n = A.shape
    for j in range(n):
        if all(A[i, j].is_ghost for i in range(m)):
            raise TrivialDependence(j)
    Bm = A.project()
    rows_c, rows_d, labels = [], [], []
    for i in range(m):
        for j in range(n):
            real = A[i, j].is_invertible
            rows_c.append(tuple(Bm[i, j] if (k == j and real) else BOTTOM for k in range(n)))
            rows_d.append(tuple(BOTTOM if k == j else Bm[i, k] for k in range(n)))
            labels.append((i, j))
    labels = tuple(labels)
    C = TropMatrix(tuple(rows_c), labels, A.col_labels)
    D = TropMatrix(tuple(rows_d), labels, A.col_labels)
    return MinMaxOperator(C, D)


@dataclass(frozen=True)
class IndependenceReport:
    """``witness`` (dependent case) is a real vector ``x != 0`` with ``Ax`` balancing zero;
    ``rows`` (independent case) indexes a square submatrix with invertible permanent."""

    independent: bool
    witness: Optional[tuple] = None
    rows: Optional[tuple] = None
    trace: Optional[PowerTrace] = None


def _unit(n, j):
    return tuple(ONE if k == j else ZERO for k in range(n))


def _inject_vector(u):
    return tuple(ZERO if x == BOTTOM else inject(x) for x in u)


def columns_independent(A: TropMatrix, maximal_support: bool = False) -> IndependenceReport:
    """Decide tropical linear independence of the columns of ``A``."""
    A = A.to_ext()
    try:
        op = independence_operator(A)
    except TrivialDependence as exc:
        return IndependenceReport(False, _unit(A.n, exc.column))
    if maximal_support:
        rep = cone_support(op.A, op.B)
    else:
        rep = cone_nontrivial(op.A, op.B)
    if rep.feasible:
        x = _inject_vector(rep.witness)
        if not check_balance_zero(A, x):
            raise SolverError("dependence witness does not balance")
        return IndependenceReport(False, x, None, rep.trace)
    rows = nonsingular_submatrix(A, _checked=True)
    return IndependenceReport(True, None, rows, rep.trace)


def _exhaustive_rows(A):
    for rows in itertools.combinations(range(A.m), A.n):
        if tropical_permanent(A.submatrix(rows=rows)).is_invertible:
            return rows
    return None


def nonsingular_submatrix(A: TropMatrix, _checked: bool = False) -> Optional[tuple]:
    """Rows ``I`` (``|I| = n``) with ``A[I, :]`` tropically nonsingular, or ``None``.

    Uses a finite ``w`` with ``f(w) < w`` for a slight variant of the
    independence game: at each column ``j`` the row attaining ``f_j(w)``
    has a strict, real maximum at ``j`` in ``B diag(w)``, which pins an
    injective choice of rows.  The result is verified by its permanent.
    """
    A = A.to_ext()
    m, n = A.shape
    if m < n:
        return None
    try:
        op = independence_operator(A)
    except TrivialDependence:
        return None
    # Z: columns where some real entry is alone in its row; f_j = -inf there
    stuck = {}
    for idx, (i, j) in enumerate(op.A.row_labels):
        if op.A.entries[idx][j] != BOTTOM and not op.row_moves[idx]:
            stuck.setdefault(j, i)
    rows_c, rows_d, labels = [], [], []
    for idx, (i, j) in enumerate(op.A.row_labels):
        if j in stuck or op.A.entries[idx][j] == BOTTOM:
            continue
        rows_c.append(op.A.entries[idx])
        rows_d.append(op.B.entries[idx])
        labels.append((i, j))
    for j in sorted(stuck):
        rows_c.append(tuple(1 if k == j else BOTTOM for k in range(n)))
        rows_d.append(tuple(0 if k == j else BOTTOM for k in range(n)))
        labels.append(("stuck", j))
    tilde = MinMaxOperator(TropMatrix(tuple(rows_c), tuple(labels)), TropMatrix(tuple(rows_d), tuple(labels)))
    value = solve_exact(tilde)
    if value.upper >= 0:
        if _checked:
            raise SolverError("independent columns but the game has a winning state")
        return None
    w = value.potential
    chosen = []
    for j in range(n):
        if j in stuck:
            chosen.append(stuck[j])
            continue
        best_i, best = None, None
        for r, (i, jj) in enumerate(labels):
            if jj != j or i == "stuck":
                continue
            val = -rows_c[r][j] + max(b + w[k] for k, b in enumerate(rows_d[r]) if b != BOTTOM)
            if best is None or val < best:
                best_i, best = i, val
        chosen.append(best_i)
    rows = tuple(sorted(set(chosen)))
    if len(rows) == n and tropical_permanent(A.submatrix(rows=rows)).is_invertible:
        return rows
    rows = _exhaustive_rows(A)
    if rows is None:
        raise SolverError("no nonsingular submatrix although the columns are independent")
    return rows


# --------------------------------------------------------------------------
# Cramer systems


def adjugate(A: TropMatrix) -> TropMatrix:
    """``adj[j][i] = per A(i|j)`` (row ``i`` and column ``j`` removed)."""
    _require_square(A)
    A = A.to_ext()
    n = A.n
    if n == 1:
        return TropMatrix(((ONE,),))
    rows = []
    for j in range(n):
        row = []
        for i in range(n):
            minor = A.submatrix(rows=[r for r in range(n) if r != i], cols=[c for c in range(n) if c != j])
            row.append(tropical_permanent(minor))
        rows.append(tuple(row))
    return TropMatrix(tuple(rows))


def cramer_solve(A: TropMatrix, b: Sequence[ExtNumber]) -> Optional[tuple]:
    """Unique real solution of ``Ax`` balancing ``b``, when the hypotheses hold.

    Requires an invertible permanent and a real-typed ``adj(A) b``;
    returns ``None`` otherwise.
    """
    _require_square(A)
    A = A.to_ext()
    if len(b) != A.n:
        raise DimensionError(f"b has length {len(b)}, expected {A.n}")
    per = tropical_permanent(A)
    if not per.is_invertible:
        return None
    y = ext_product(adjugate(A), list(b))
    if any(not e.is_real for e in y):
        return None
    inv = per.inverse()
    x = tuple(ext_mul(inv, e) for e in y)
    if not all(balances(l, r) for l, r in zip(ext_product(A, list(x)), b)):
        raise SolverError("Cramer solution fails the balance check")
    return x


def is_balanced_solution(A: TropMatrix, x: Sequence[ExtNumber], b: Sequence[ExtNumber]) -> bool:
    return all(balances(l, r) for l, r in zip(ext_product(A.to_ext(), list(x)), b))


# --------------------------------------------------------------------------
# Rank


def rank_at_least(A: TropMatrix, r: int) -> bool:
    """True iff some ``r`` columns of ``A`` are independent."""
    if not 0 <= r <= min(A.m, A.n):
        raise ValueError(f"r must lie in 0..{min(A.m, A.n)}")
    if r == 0:
        return True
    return any(
        columns_independent(A.submatrix(cols=cols)).independent
        for cols in itertools.combinations(range(A.n), r)
    )


def tropical_rank(A: TropMatrix, max_subsets: int = 20_000) -> int:
    """Largest number of independent columns (searched downward)."""
    top = min(A.m, A.n)
    total = sum(math.comb(A.n, r) for r in range(1, top + 1))
    if total > max_subsets:
        raise ValueError(f"rank search would examine {total} column subsets (cap {max_subsets})")
    for r in range(top, 0, -1):
        if rank_at_least(A, r):
            return r
    return 0


def submatrix_rank(A: TropMatrix, max_subsets: int = 20_000) -> int:
    """Largest ``k`` with a ``k x k`` submatrix of invertible permanent (enumeration)."""
    A = A.to_ext()
    top = min(A.m, A.n)
    total = sum(math.comb(A.m, k) * math.comb(A.n, k) for k in range(1, top + 1))
    if total > max_subsets:
        raise ValueError(f"enumeration would examine {total} submatrices (cap {max_subsets})")
    for k in range(top, 0, -1):
        for rows in itertools.combinations(range(A.m), k):
            for cols in itertools.combinations(range(A.n), k):
                if tropical_permanent(A.submatrix(rows=rows, cols=cols)).is_invertible:
                    return k
    return 0
