import itertools

import pytest
from hypothesis import given, settings, strategies as st

from instances import NEG, hyper_rows, random_ext_matrix, rng_for
from tropgame.linalg import DimensionError, TropMatrix, check_balance_zero, compose
from tropgame.rank import (
    TrivialDependence,
    adjugate,
    columns_independent,
    cramer_solve,
    enumerated_permanent,
    independence_operator,
    is_balanced_solution,
    is_tropically_singular,
    nonsingular_submatrix,
    optimal_assignment,
    rank_at_least,
    submatrix_rank,
    tropical_permanent,
    tropical_rank,
)
from tropgame.semiring import ONE, ZERO, ghost, inject


def ext(rows):
    return TropMatrix.from_rows(rows)


def test_optimal_assignment_examples():
    r = optimal_assignment(TropMatrix.from_rows([[0, NEG], [NEG, 0]]))
    assert (r.value, r.unique, r.permutation) == (0, True, (0, 1))
    r = optimal_assignment(TropMatrix.from_rows([[0, 0], [0, 0]]))
    assert r.value == 0 and not r.unique
    r = optimal_assignment(TropMatrix.from_rows([[2, 3], [4, 6]]))
    assert (r.value, r.unique, r.permutation) == (8, True, (0, 1))
    r = optimal_assignment(TropMatrix.from_rows([[NEG, 0], [NEG, 1]]))
    assert r.value == NEG and r.permutation is None
    with pytest.raises(DimensionError):
        optimal_assignment(TropMatrix.from_rows([[0, 1]]))


def test_singularity_examples():
    assert not is_tropically_singular(TropMatrix.from_rows([[0, NEG], [NEG, 0]]))
    assert is_tropically_singular(TropMatrix.from_rows([[0, 0], [0, 0]]))
    assert is_tropically_singular(TropMatrix.from_rows([[NEG, NEG], [NEG, NEG]]))


def test_permanent_examples():
    assert tropical_permanent(ext([[inject(0), ZERO], [ZERO, inject(0)]])) == inject(0)
    assert tropical_permanent(ext([[ghost(0), ZERO], [ZERO, inject(0)]])) == ghost(0)
    assert tropical_permanent(ext([[inject(0)] * 2] * 2)) == ghost(0)
    assert tropical_permanent(ext([[ZERO, inject(1)], [ZERO, inject(0)]])) == ZERO


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_permanent_matches_enumeration(seed):
    rng = rng_for(seed)
    n = rng.randint(1, 5)
    A = random_ext_matrix(rng, n, n)
    assert tropical_permanent(A) == enumerated_permanent(A)


@pytest.mark.parametrize("n", range(1, 8))
def test_singularity_matches_enumeration(n):
    rng = rng_for(100 + n)
    trials = 40 if n <= 5 else 8
    for _ in range(trials):
        # small magnitudes make ties (hence singular matrices) frequent
        A = TropMatrix.from_rows([[NEG if rng.random() < 0.2 else rng.randint(0, 2) for _ in range(n)] for _ in range(n)])
        per = enumerated_permanent(A)
        assert is_tropically_singular(A) == (not per.is_invertible)


def test_independence_operator_examples():
    op = independence_operator(TropMatrix.from_rows([[3, 5]]))
    x = [7, 11]
    assert op(x) == [-3 + 5 + 11, -5 + 3 + 7]
    H = hyper_rows("abcd")
    op = independence_operator(H)
    # f_1(x) = min over the rows of -B_i1 + max_{k != 1}(B_ik + x_k)
    for x in itertools.product(range(-2, 2), repeat=3):
        f1 = min(-r[0] + max(r[1] + x[1], r[2] + x[2]) for r in (H.row(i) for i in range(4)))
        f2 = min(-r[1] + max(r[0] + x[0], r[2] + x[2]) for r in (H.row(i) for i in range(4)))
        f3 = min(-r[2] + max(r[0] + x[0], r[1] + x[1]) for r in (H.row(i) for i in range(4)))
        assert op(list(x)) == [f1, f2, f3]
    op = independence_operator(TropMatrix.from_rows([[NEG, 4, NEG], [0, 0, 0]]))
    assert op.row_moves[op.A.row_labels.index((0, 1))] == ()


def test_trivial_dependence():
    A = ext([[ghost(1), inject(0)], [ZERO, inject(2)]])
    with pytest.raises(TrivialDependence):
        independence_operator(A)
    rep = columns_independent(A)
    assert not rep.independent and rep.witness == (ONE, ZERO)
    assert check_balance_zero(A, rep.witness)


def test_columns_independent_hyperplane():
    rep = columns_independent(hyper_rows("abcd"))
    assert not rep.independent and rep.witness == (inject(0), inject(-2), inject(-1))
    rep = columns_independent(hyper_rows("abce"))
    assert rep.independent
    assert tropical_permanent(hyper_rows("abce").submatrix(rows=rep.rows)).is_invertible


def test_nonsingular_submatrix_examples():
    H = hyper_rows("abce")
    rows = nonsingular_submatrix(H)
    valid = [R for R in itertools.combinations(range(4), 3) if enumerated_permanent(H.submatrix(rows=R)).is_invertible]
    assert rows in valid
    assert valid == [(0, 1, 3), (0, 2, 3), (1, 2, 3)]
    A = TropMatrix.from_rows([[0, NEG], [NEG, 0]])
    assert nonsingular_submatrix(A) == (0, 1)
    assert nonsingular_submatrix(hyper_rows("abcd")) is None
    assert nonsingular_submatrix(TropMatrix.from_rows([[0, 1]])) is None


def test_nonsingular_submatrix_with_isolated_entries():
    # rows with a single real entry make the game operator -inf in that column
    A = TropMatrix.from_rows([[5, NEG, NEG], [NEG, 1, 2], [0, 3, 1], [NEG, NEG, 4]])
    rows = nonsingular_submatrix(A)
    assert rows is not None and tropical_permanent(A.submatrix(rows=rows)).is_invertible


def test_cramer_examples():
    I = TropMatrix.ext_identity(3)
    b = (inject(1), ZERO, inject(-4))
    assert cramer_solve(I, b) == b
    A = ext([[inject(2), ZERO], [ZERO, inject(3)]])
    x = cramer_solve(A, [inject(5), inject(5)])
    assert x == (inject(3), inject(2))
    assert adjugate(A).entries == ((inject(3), ZERO), (ZERO, inject(2)))
    assert cramer_solve(ext([[inject(0)] * 2] * 2), [inject(0), inject(0)]) is None
    assert adjugate(ext([[inject(4)]])).entries == ((ONE,),)


def test_rank_examples():
    abcd, abce = hyper_rows("abcd"), hyper_rows("abce")
    assert rank_at_least(abce, 3)
    assert not rank_at_least(abcd, 3) and rank_at_least(abcd, 2)
    assert rank_at_least(TropMatrix.from_rows([[NEG, 1], [NEG, NEG]]), 1)
    assert tropical_rank(abcd) == 2 and tropical_rank(abce) == 3
    assert tropical_rank(ext([[ZERO, ZERO], [ZERO, ZERO]])) == 0
    with pytest.raises(ValueError):
        rank_at_least(abcd, 4)
    with pytest.raises(ValueError):
        tropical_rank(abcd, max_subsets=2)
    # two columns of abcd: independence confirmed by a 2x2 permanent
    assert any(
        enumerated_permanent(abcd.submatrix(rows=R, cols=C)).is_invertible
        for R in itertools.combinations(range(4), 2)
        for C in itertools.combinations(range(3), 2)
    )


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_rank_equalities(seed):
    rng = rng_for(seed)
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    A = random_ext_matrix(rng, m, n)
    r = tropical_rank(A)
    assert r == submatrix_rank(A) == tropical_rank(A.transpose())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_dependence_witness_balances(seed):
    rng = rng_for(seed)
    A = random_ext_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
    for maximal in (False, True):
        rep = columns_independent(A, maximal_support=maximal)
        if not rep.independent:
            assert any(not x.is_zero for x in rep.witness)
            assert all(x.is_real for x in rep.witness)
            assert check_balance_zero(A, rep.witness)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_cramer_random(seed):
    rng = rng_for(seed)
    n = rng.randint(1, 3)
    A = random_ext_matrix(rng, n, n)
    b = [inject(rng.randint(-3, 3)) for _ in range(n)]
    x = cramer_solve(A, b)
    if x is not None:
        assert is_balanced_solution(A, x, b)


def test_independence_operator_composes():
    op = independence_operator(hyper_rows("abce"))
    assert compose(op, op)([0, 0, 0]) == op(op([0, 0, 0]))
