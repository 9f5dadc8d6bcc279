"""Worked instances and random generators shared by the tests."""
import math
import random
from fractions import Fraction

from tropgame.linalg import MinMaxOperator, TropMatrix
from tropgame.semiring import ZERO, ghost, inject

NEG = float("-inf")

# 3x2 system whose game has values (-1, 5)
FIRST_A = TropMatrix.from_rows([[2, NEG], [8, NEG], [NEG, 0]])
FIRST_B = TropMatrix.from_rows([[1, NEG], [-3, -12], [-9, 5]])
FIRST_OP = MinMaxOperator(FIRST_A, FIRST_B)

# points of the hyperplane example, used as rows of a 4x3 matrix
HYPER = {"a": (0, 2, 0), "b": (0, 3, 2), "c": (0, 1, 1), "d": (1, 3, 0), "e": (1, 1, 0)}


def hyper_rows(names):
    return TropMatrix.from_rows([HYPER[x] for x in names])


def geometric(a):
    """Three-state game with chi = (2a+1)/2 everywhere, weights scaled to integers.

    Returns ``(op, scale)``; the values of ``op`` are ``scale`` times the
    values of the unscaled game.
    """
    a = Fraction(a)
    A = [[0, NEG, NEG], [NEG, -2, NEG], [NEG, -2, -a]]
    B = [[NEG, a - 2, a - 1], [a, NEG, a - 1], [2, NEG, NEG]]
    scale = math.lcm(2, a.denominator)

    def s(x):
        if x == NEG:
            return x
        y = scale * x
        assert y.denominator == 1
        return y.numerator

    op = MinMaxOperator(
        TropMatrix.from_rows([[s(x) for x in r] for r in A]),
        TropMatrix.from_rows([[s(x) for x in r] for r in B]),
    )
    return op, scale


# Max plays square -> circle, Min plays circle -> square (0-based)
GEOMETRIC_SIGMA = (2, 2, 0)
GEOMETRIC_PI = (0, 1, 2)

# a game on which the power algorithm runs to its horizon
HORIZON_A = TropMatrix.from_rows([[2, 2, NEG, NEG], [-2, NEG, -2, 1], [NEG, -4, -2, 0], [NEG, 5, NEG, 4]])
HORIZON_B = TropMatrix.from_rows([[5, NEG, NEG, NEG], [0, NEG, NEG, NEG], [NEG, -4, NEG, NEG], [NEG, 3, 5, -5]])


def random_matrix(rng, m, n, p_neg, lo=-5, hi=5):
    return TropMatrix.from_rows(
        [[NEG if rng.random() < p_neg else rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
    )


def random_game(rng, max_size=9, max_n=5, weights=(-5, 5)):
    """Random operator satisfying both assumptions with ``n + m <= max_size``."""
    while True:
        n = rng.randint(1, min(max_n, max_size - 1))
        m = rng.randint(1, max_size - n)
        p = rng.choice([0.2, 0.4, 0.6])
        A = random_matrix(rng, m, n, p, *weights)
        B = random_matrix(rng, m, n, p, *weights)
        op = MinMaxOperator(A, B)
        if op.is_game:
            return op


def random_ext(rng, p_zero=0.25, p_ghost=0.2, lo=-3, hi=3):
    if rng.random() < p_zero:
        return ZERO
    v = rng.randint(lo, hi)
    return ghost(v) if rng.random() < p_ghost else inject(v)


def random_ext_matrix(rng, m, n, **kw):
    return TropMatrix.from_rows([[random_ext(rng, **kw) for _ in range(n)] for _ in range(m)])


def rng_for(seed):
    return random.Random(seed)
