"""Deterministic mean payoff games attached to min-max operators ``f = A^# B``.

Circle nodes ``j`` (columns) belong to Min, square nodes ``i`` (rows) to Max.
From circle ``j`` Min moves to a square ``i`` with ``A_ij`` finite and
receives ``A_ij`` (Max pays ``-A_ij``); from square ``i`` Max moves to a
circle ``k`` with ``B_ik`` finite and receives ``B_ik``.  The value
``chi_j(f)`` is the mean payment per round received by Max when the play
starts from circle ``j``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from ._meancycle import (
    enumerated_max_reachable_mean,
    enumerated_min_reachable_mean,
    max_reachable_mean,
    min_reachable_mean,
)
from .linalg import MinMaxOperator, TropMatrix
from .semiring import BOTTOM, format_weight


class SolverError(RuntimeError):
    """Internal failure of an exact solver (a bug, never a property of the input)."""


# --------------------------------------------------------------------------
# Game graph


@dataclass(frozen=True)
class GameGraph:
    """Bipartite game graph.  Arcs are ``(source, target, weight)``.

    ``min_arcs`` go from circle ``j`` to square ``i`` with weight ``-A_ij``,
    ``max_arcs`` from square ``i`` to circle ``k`` with weight ``B_ik``.
    """

    n: int
    m: int
    min_arcs: tuple
    max_arcs: tuple
    M: int

    def to_dot(self, name: str = "game") -> str:
        lines = [f"digraph {name} {{"]
        for i in range(self.m):
            lines.append(f'  r{i + 1} [shape=box, label="{i + 1}"];')
        for j in range(self.n):
            lines.append(f'  c{j + 1} [shape=circle, label="{j + 1}"];')
        for j, i, w in self.min_arcs:
            lines.append(f'  c{j + 1} -> r{i + 1} [label="{format_weight(w)}"];')
        for i, k, w in self.max_arcs:
            lines.append(f'  r{i + 1} -> c{k + 1} [label="{format_weight(w)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_game(op: MinMaxOperator) -> GameGraph:
    op.require_game()
    min_arcs = tuple((j, i, -a) for j, moves in enumerate(op.col_moves) for i, a in moves)
    max_arcs = tuple((i, k, b) for i, moves in enumerate(op.row_moves) for k, b in moves)
    return GameGraph(op.n, op.m, min_arcs, max_arcs, op.max_abs)


def to_dot(op: MinMaxOperator) -> str:
    return build_game(op).to_dot()


# --------------------------------------------------------------------------
# Strategies


@dataclass(frozen=True)
class Strategy:
    """Positional strategy.

    ``kind == "max"``: ``choice[i]`` is the circle chosen at square ``i``.
    ``kind == "min"``: ``choice[j]`` is the square chosen at circle ``j``.
    Indices are 0-based.
    """

    kind: str
    choice: tuple

    def __post_init__(self):
        if self.kind not in ("max", "min"):
            raise ValueError(f"strategy kind must be 'max' or 'min', not {self.kind!r}")
        object.__setattr__(self, "choice", tuple(self.choice))


def validate_strategy(op: MinMaxOperator, s: Strategy):
    if s.kind == "max":
        if len(s.choice) != op.m:
            raise ValueError(f"max strategy needs {op.m} entries, got {len(s.choice)}")
        for i, k in enumerate(s.choice):
            if not (0 <= k < op.n) or op.B[i, k] == BOTTOM:
                raise ValueError(f"max strategy: no arc from square {i + 1} to circle {k + 1}")
    else:
        if len(s.choice) != op.n:
            raise ValueError(f"min strategy needs {op.n} entries, got {len(s.choice)}")
        for j, i in enumerate(s.choice):
            if not (0 <= i < op.m) or op.A[i, j] == BOTTOM:
                raise ValueError(f"min strategy: no arc from circle {j + 1} to square {i + 1}")


def _min_player_arcs(op: MinMaxOperator, pi: Sequence[int]) -> list:
    """Arcs of ``h^pi``: Max alone, ``j -> k`` with weight ``-A_{pi(j) j} + B_{pi(j) k}``."""
    arcs = []
    for j, i in enumerate(pi):
        c = -op.A.entries[i][j]
        for k, b in op.row_moves[i]:
            arcs.append((j, k, c + b))
    return arcs


def _max_player_arcs(op: MinMaxOperator, sigma: Sequence[int]) -> list:
    """Arcs of ``g^sigma``: Min alone, ``j -> sigma(i)`` with weight ``-A_ij + B_{i sigma(i)}``."""
    arcs = []
    for j, moves in enumerate(op.col_moves):
        for i, a in moves:
            k = sigma[i]
            arcs.append((j, k, -a + op.B.entries[i][k]))
    return arcs


def certify_strategy(op: MinMaxOperator, s: Strategy) -> list:
    """Exact value of the one-player game left after fixing ``s``.

    For a Max strategy this is ``chi(g^sigma) <= chi(f)``; for a Min
    strategy ``chi(h^pi) >= chi(f)``.
    """
    op.require_game()
    validate_strategy(op, s)
    if s.kind == "max":
        return min_reachable_mean(op.n, _max_player_arcs(op, s.choice))
    return max_reachable_mean(op.n, _min_player_arcs(op, s.choice))


# --------------------------------------------------------------------------
# Value iteration and the power algorithm


def value_iteration(op: MinMaxOperator, x0: Sequence, N: int) -> list:
    """``f^N(x0)`` with exact integer accumulators."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if len(x0) != op.n:
        raise ValueError(f"x0 has length {len(x0)}, expected {op.n}")
    if N == 0:
        return list(x0)
    op.require_game()
    return kernels.iterate(kernels.Prepared(op), list(x0), N)


class Stop(enum.Enum):
    ALL_NEGATIVE = "all-negative"
    FIXED_POINT = "fixed-point"
    PARTIAL_FIXED_POINT = "partial-fixed-point"
    HORIZON = "horizon"


_STOP_CODES = {
    kernels.ALL_NEGATIVE: Stop.ALL_NEGATIVE,
    kernels.FIXED_POINT: Stop.FIXED_POINT,
    kernels.PARTIAL_FIXED_POINT: Stop.PARTIAL_FIXED_POINT,
    kernels.HORIZON: Stop.HORIZON,
}


@dataclass(frozen=True)
class PowerTrace:
    """Outcome of :func:`power_algorithm`.

    ``nonnegative`` is the verdict ``max_j chi_j(f) >= 0``.  ``iterates``
    holds ``x^0, ..., x^k`` and, when a partial fixed point was detected,
    also ``x^{k+1}``.
    """

    iterates: tuple
    stop: Stop
    steps: int
    horizon: int
    witness: Optional[tuple]

    @property
    def nonnegative(self) -> bool:
        return self.stop is not Stop.ALL_NEGATIVE


def power_horizon(op: MinMaxOperator) -> int:
    return 2 * (op.n + op.m) ** 2 * op.max_abs + 1


def power_algorithm(op: MinMaxOperator, record: bool = True, use_extension: bool = None) -> PowerTrace:
    """Decide ``max_j chi_j(f) >= 0`` by iterating ``g = min(f, id)`` from 0."""
    op.require_game()
    K = power_horizon(op)
    code, k, _, witness, iterates = kernels.power(kernels.Prepared(op), K, record, use_extension)
    return PowerTrace(
        iterates=tuple(tuple(x) for x in iterates),
        stop=_STOP_CODES[code],
        steps=k,
        horizon=K,
        witness=None if witness is None else tuple(witness),
    )


def winning_states(op: MinMaxOperator, use_extension: bool = None) -> list:
    """``[chi_j(f) >= 0 for j]`` by value iteration with a separating horizon."""
    op.require_game()
    size = op.n + op.m
    N = 4 * size * size * op.max_abs + 1
    v = kernels.iterate(kernels.Prepared(op), [0] * op.n, N, use_extension)
    threshold = -2 * size * op.max_abs
    return [x >= threshold for x in v]


# --------------------------------------------------------------------------
# Exact solution by policy iteration


@dataclass(frozen=True)
class GameValue:
    """Exact value of a game with optimal positional strategies.

    ``potential`` is a finite vector ``w`` with ``f(w) = w + chi``.
    """

    chi: tuple
    sigma: Strategy
    pi: Strategy
    bias: tuple
    potential: tuple
    iterations: int

    @property
    def winners(self) -> tuple:
        return tuple(c >= 0 for c in self.chi)

    @property
    def upper(self) -> Fraction:
        return max(self.chi)

    @property
    def lower(self) -> Fraction:
        return min(self.chi)


def _bias(op, arcs, eta, prev):
    """Bias ``v`` with ``h(v + t eta) = v + (t+1) eta`` for large ``t``.

    Per level ``lam`` of ``eta`` the bias is a max-plus eigenvector of the
    arcs inside the level, built from longest paths to one anchor per class
    of critical nodes.  Anchors keep their previous bias when they stayed at
    the same level; this makes successive evaluations monotone.
    """
    n = len(eta)
    v = [None] * n
    for lam in sorted(set(eta)):
        nodes = [j for j in range(n) if eta[j] == lam]
        pos = {j: p for p, j in enumerate(nodes)}
        s = len(nodes)
        d = [[BOTTOM] * s for _ in range(s)]
        for u, w, wt in arcs:
            pu, pw = pos.get(u), pos.get(w)
            if pu is not None and pw is not None and wt - lam > d[pu][pw]:
                d[pu][pw] = wt - lam
        for t in range(s):
            dt = d[t]
            for a in range(s):
                dat = d[a][t]
                if dat == BOTTOM:
                    continue
                da = d[a]
                for b in range(s):
                    if dt[b] != BOTTOM and dat + dt[b] > da[b]:
                        da[b] = dat + dt[b]
        critical = [p for p in range(s) if d[p][p] == 0]
        anchors = []
        assigned = set()
        for c in critical:
            if c in assigned:
                continue
            anchors.append(c)
            for c2 in critical:
                if d[c][c2] != BOTTOM and d[c2][c] != BOTTOM and d[c][c2] + d[c2][c] == 0:
                    assigned.add(c2)
        if not anchors:
            raise SolverError("level without critical node")
        base = {}
        for a in anchors:
            j = nodes[a]
            if prev is not None and prev[0][j] == lam:
                base[a] = prev[1][j]
            else:
                base[a] = 0
        for p, j in enumerate(nodes):
            best = None
            for a in anchors:
                dist = 0 if p == a else d[p][a]
                if dist == BOTTOM:
                    continue
                val = dist + base[a]
                if best is None or val > best:
                    best = val
            if best is None:
                raise SolverError("node does not reach a critical class")
            v[j] = best
    return v


def _evaluate_min(op, pi, prev):
    arcs = _min_player_arcs(op, pi)
    eta = max_reachable_mean(op.n, arcs)
    return eta, _bias(op, arcs, eta, prev)


def _step_key(op, i, eta, v):
    moves = op.row_moves[i]
    s = max(eta[k] for k, _ in moves)
    c = max(b + v[k] for k, b in moves if eta[k] == s)
    return s, c


def solve_exact(op: MinMaxOperator, max_iterations: int = 100_000) -> GameValue:
    """Exact values and optimal positional strategies.

    Policy iteration on Min strategies: each strategy is evaluated exactly
    (Max's best response is a maximal cycle mean problem) and improved
    where a strictly better move exists in the lexicographic order on
    (value, bias).
    """
    op.require_game()
    pi = []
    for j, moves in enumerate(op.col_moves):
        best_i, best = None, None
        for i, a in moves:
            val = -a + max(b for _, b in op.row_moves[i])
            if best is None or val < best:
                best_i, best = i, val
        pi.append(best_i)

    prev = None
    seen = set()
    for it in range(1, max_iterations + 1):
        key = tuple(pi)
        eta, v = _evaluate_min(op, pi, prev)
        state = (key, tuple(eta), tuple(v))
        if state in seen:
            raise SolverError("policy iteration revisited a strategy")
        seen.add(state)
        changed = False
        new_pi = list(pi)
        for j, moves in enumerate(op.col_moves):
            best = (eta[j], v[j] + eta[j])
            for i, a in moves:
                s, c = _step_key(op, i, eta, v)
                cand = (s, c - a)
                if cand < best:
                    best = cand
                    new_pi[j] = i
            if new_pi[j] != pi[j]:
                changed = True
        if not changed:
            break
        prev = (eta, v)
        pi = new_pi
    else:
        raise SolverError(f"policy iteration did not stop within {max_iterations} rounds")

    sigma = []
    for i, moves in enumerate(op.row_moves):
        best_k, best = None, None
        for k, b in moves:
            cand = (eta[k], b + v[k])
            if best is None or cand > best:
                best_k, best = k, cand
        sigma.append(best_k)

    sig = Strategy("max", sigma)
    lower = certify_strategy(op, sig)
    if lower != eta:
        raise SolverError("Max strategy extracted from the bias does not certify the value")

    w = _potential(op, eta, v)
    return GameValue(
        chi=tuple(Fraction(x) for x in eta),
        sigma=sig,
        pi=Strategy("min", pi),
        bias=tuple(v),
        potential=tuple(w),
        iterations=it,
    )


def _potential(op, eta, v, max_doublings: int = 256):
    T = 1
    for _ in range(max_doublings):
        w = [vj + T * ej for vj, ej in zip(v, eta)]
        if op(w) == [wj + ej for wj, ej in zip(w, eta)]:
            return w
        T *= 2
    raise SolverError("no potential found along the invariant half-line")


# --------------------------------------------------------------------------
# Oracles and derived operators


def _strategy_space(op, kind):
    if kind == "max":
        return itertools.product(*([k for k, _ in moves] for moves in op.row_moves))
    return itertools.product(*([i for i, _ in moves] for moves in op.col_moves))


def strategy_count(op: MinMaxOperator, kind: str) -> int:
    moves = op.row_moves if kind == "max" else op.col_moves
    return math.prod(len(x) for x in moves)


def brute_force_values(op: MinMaxOperator, side: str = "both", limit: int = 200_000) -> dict:
    """Values by enumerating positional strategies (oracle for small games).

    Returns a dict with ``"max"`` (componentwise max over Max strategies of
    ``chi(g^sigma)``) and/or ``"min"`` (componentwise min over Min strategies
    of ``chi(h^pi)``).  Cycle means come from simple-cycle enumeration.
    """
    op.require_game()
    sides = ("max", "min") if side == "both" else (side,)
    out = {}
    for kind in sides:
        if strategy_count(op, kind) > limit:
            raise ValueError(f"too many {kind} strategies to enumerate")
        best = None
        for choice in _strategy_space(op, kind):
            if kind == "max":
                vals = enumerated_min_reachable_mean(op.n, _max_player_arcs(op, choice))
                best = vals if best is None else [max(a, b) for a, b in zip(best, vals)]
            else:
                vals = enumerated_max_reachable_mean(op.n, _min_player_arcs(op, choice))
                best = vals if best is None else [min(a, b) for a, b in zip(best, vals)]
        out[kind] = [Fraction(x) for x in best]
    return out


def dual(op: MinMaxOperator) -> MinMaxOperator:
    """Operator with the roles of the players exchanged.

    ``dual(op) = B^T^# A^T`` acts on square nodes and equals
    ``y -> -h(-y)`` for ``h = B A^#``.  It is an involution and satisfies
    ``max chi(dual(op)) = -min chi(op)``.
    """
    return MinMaxOperator(op.B.transpose(), op.A.transpose())


def identity_operator(n: int) -> MinMaxOperator:
    return MinMaxOperator(TropMatrix.identity(n), TropMatrix.identity(n))
