import itertools

import pytest
from hypothesis import given, strategies as st

from tropgame.semiring import (
    BOTTOM,
    ONE,
    ZERO,
    ExtNumber,
    Mult,
    balances,
    ext_add,
    ext_join,
    ext_le,
    ext_mul,
    format_ext,
    ghost,
    inject,
    parse_ext,
    project,
    tmax_add,
    tmax_mul,
)

weights = st.one_of(st.just(BOTTOM), st.integers(-6, 6))
ext_numbers = st.builds(lambda w, g: ghost(w) if g else inject(w), weights, st.booleans())


def test_tmax_add_examples():
    assert tmax_add(3, 5) == 5
    assert tmax_add(BOTTOM, 7) == 7
    assert tmax_add(-2, -2) == -2


def test_tmax_mul_examples():
    assert tmax_mul(3, 5) == 8
    assert tmax_mul(BOTTOM, 7) == BOTTOM
    assert tmax_mul(0, -4) == -4


def test_tmax_mul_no_overflow():
    big = 2**70
    assert tmax_mul(big, big) == 2**71


def test_ext_add_examples():
    assert ext_add(inject(2), inject(2)) == ghost(2)
    assert ext_add(inject(2), inject(3)) == inject(3)
    assert ext_add(inject(2), ghost(3)) == ghost(3)


def test_ext_mul_examples():
    assert ext_mul(inject(2), inject(3)) == inject(5)
    assert ext_mul(inject(2), ghost(3)) == ghost(5)
    assert ext_mul(ZERO, ghost(3)) == ZERO


def test_inject_project():
    assert inject(BOTTOM) == ZERO
    assert project(ghost(5)) == 5
    for b in (BOTTOM, -3, 0, 4):
        assert project(inject(b)) == b


def test_balances_examples():
    assert balances(inject(3), inject(3))
    assert not balances(inject(3), inject(2))
    assert balances(ZERO, ZERO)


def test_normalization():
    assert ghost(BOTTOM) == ZERO
    assert ExtNumber(4, Mult.ZERO) == ZERO
    with pytest.raises(ValueError):
        ExtNumber(float("inf"), Mult.REAL)


def test_inverse():
    assert inject(3).inverse() == inject(-3)
    with pytest.raises(ZeroDivisionError):
        ghost(3).inverse()
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_balance_not_transitive():
    # exhaustive search over small magnitudes; the first triple found is frozen here
    pool = [ZERO] + [f(v) for v in range(-1, 2) for f in (inject, ghost)]
    found = None
    for a, b, c in itertools.product(pool, repeat=3):
        if balances(a, b) and balances(b, c) and not balances(a, c):
            found = (a, b, c)
            break
    assert found == (ZERO, ghost(-1), inject(-1))
    assert balances(inject(3), ghost(3)) and balances(ghost(3), inject(2))
    assert not balances(inject(3), inject(2))


def test_parse_format_roundtrip():
    for tok in ("-inf", "0", "-7", "12g", "-3g"):
        assert format_ext(parse_ext(tok)) == tok


@given(ext_numbers, ext_numbers, ext_numbers)
def test_semiring_laws(a, b, c):
    assert ext_add(a, b) == ext_add(b, a)
    assert ext_mul(a, b) == ext_mul(b, a)
    assert ext_add(ext_add(a, b), c) == ext_add(a, ext_add(b, c))
    assert ext_mul(ext_mul(a, b), c) == ext_mul(a, ext_mul(b, c))
    assert ext_mul(a, ext_add(b, c)) == ext_add(ext_mul(a, b), ext_mul(a, c))
    assert ext_add(a, ZERO) == a and ext_mul(a, ONE) == a


@given(ext_numbers, ext_numbers)
def test_project_is_morphism(a, b):
    assert project(ext_add(a, b)) == tmax_add(project(a), project(b))
    assert project(ext_mul(a, b)) == tmax_mul(project(a), project(b))


@given(ext_numbers, ext_numbers)
def test_injection_sandwich(a, b):
    ia, ib = inject(project(a)), inject(project(b))
    middle = inject(project(ext_add(a, b)))
    assert ext_le(ext_join(ia, ib), middle)
    assert ext_le(middle, ext_add(ia, ib))


@given(weights, weights)
def test_inject_multiplicative_and_monotone(a, b):
    assert inject(tmax_mul(a, b)) == ext_mul(inject(a), inject(b))
    if a <= b:
        assert ext_le(inject(a), inject(b))


@given(ext_numbers, ext_numbers)
def test_natural_order_matches_definition(x, y):
    pool = [ZERO] + [f(v) for v in range(-8, 9) for f in (inject, ghost)]
    exists = any(ext_add(x, z) == y for z in pool)
    assert ext_le(x, y) == exists


@given(ext_numbers, ext_numbers)
def test_balances_reflexive_symmetric(a, b):
    assert balances(a, a)
    assert balances(a, b) == balances(b, a)
