"""Exact tropical convexity and mean payoff game solvers.

Tropical (max-plus) cones and polyhedra are decided by solving the
associated deterministic mean payoff games, and tropical linear
independence of vectors by a game of the same kind.
"""
from .convexity import (
    FeasibilityReport,
    cone_nontrivial,
    cone_support,
    finite_solution,
    game_to_polyhedron,
    integer_witness,
    poly_nonempty,
)
from .games import (
    GameGraph,
    GameValue,
    PowerTrace,
    Stop,
    Strategy,
    build_game,
    certify_strategy,
    dual,
    power_algorithm,
    solve_exact,
    value_iteration,
    winning_states,
)
from .kernels import backend
from .linalg import MinMaxOperator, TropMatrix, enforce_assumptions, matvec, minmax_apply, residual_apply
from .rank import (
    columns_independent,
    cramer_solve,
    is_tropically_singular,
    nonsingular_submatrix,
    optimal_assignment,
    rank_at_least,
    tropical_permanent,
    tropical_rank,
)
from .semiring import BOTTOM, ExtNumber, Mult

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "ExtNumber",
    "FeasibilityReport",
    "GameGraph",
    "GameValue",
    "MinMaxOperator",
    "Mult",
    "PowerTrace",
    "Stop",
    "Strategy",
    "TropMatrix",
    "backend",
    "build_game",
    "certify_strategy",
    "columns_independent",
    "cone_nontrivial",
    "cone_support",
    "cramer_solve",
    "dual",
    "enforce_assumptions",
    "finite_solution",
    "game_to_polyhedron",
    "integer_witness",
    "is_tropically_singular",
    "matvec",
    "minmax_apply",
    "nonsingular_submatrix",
    "optimal_assignment",
    "poly_nonempty",
    "power_algorithm",
    "rank_at_least",
    "residual_apply",
    "solve_exact",
    "tropical_permanent",
    "tropical_rank",
    "value_iteration",
    "winning_states",
]
