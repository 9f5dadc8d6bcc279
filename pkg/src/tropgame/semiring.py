"""Scalars of the max-plus semiring and of its extension with ghost elements.

Max-plus scalars (``Weight``) are plain Python integers, with ``BOTTOM``
(``float("-inf")``) standing for the tropical zero.  Python integers have
arbitrary precision, so tropical products never overflow.

Extended scalars (``ExtNumber``) pair a magnitude with a multiplicity tag
that records whether a maximum was attained once (``REAL``) or at least
twice (``GHOST``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

BOTTOM = float("-inf")
TOP = float("inf")

Weight = Union[int, Fraction, float]


def is_finite(a) -> bool:
    return a != BOTTOM and a != TOP


def tmax_add(a: Weight, b: Weight) -> Weight:
    """Tropical addition, ``max(a, b)``."""
    return a if a >= b else b


def tmax_mul(a: Weight, b: Weight) -> Weight:
    """Tropical multiplication, ``a + b`` with BOTTOM absorbing."""
    if a == BOTTOM or b == BOTTOM:
        return BOTTOM
    return a + b


class Mult(enum.IntEnum):
    """Multiplicity in N_2 = {0, 1, >=2}."""

    ZERO = 0
    REAL = 1
    GHOST = 2

    def __add__(self, other):  # type: ignore[override]
        return Mult(min(int(self) + int(other), 2))

    def __mul__(self, other):  # type: ignore[override]
        return Mult(min(int(self) * int(other), 2))


@dataclass(frozen=True, order=False)
class ExtNumber:
    """An element of the extended tropical semiring.

    Construction normalizes the carrier: a BOTTOM magnitude always carries
    multiplicity ZERO, and ZERO always carries a BOTTOM magnitude.
    """

    magnitude: Weight
    mult: Mult

    def __post_init__(self):
        mult = Mult(self.mult)
        if self.magnitude == TOP:
            raise ValueError("magnitude must be finite or BOTTOM")
        if self.magnitude == BOTTOM or mult is Mult.ZERO:
            object.__setattr__(self, "magnitude", BOTTOM)
            mult = Mult.ZERO
        object.__setattr__(self, "mult", mult)

    @property
    def is_zero(self) -> bool:
        return self.mult is Mult.ZERO

    @property
    def is_real(self) -> bool:
        """Real type: lies in T_e^v (the zero element counts)."""
        return self.mult is not Mult.GHOST

    @property
    def is_ghost(self) -> bool:
        """Ghost type: lies in T_e^o (the zero element counts)."""
        return self.mult is not Mult.REAL

    @property
    def is_invertible(self) -> bool:
        return self.mult is Mult.REAL

    def inverse(self) -> "ExtNumber":
        if not self.is_invertible:
            raise ZeroDivisionError(f"{self} is not invertible")
        return ExtNumber(-self.magnitude, Mult.REAL)

    def __add__(self, other: "ExtNumber") -> "ExtNumber":
        return ext_add(self, other)

    def __mul__(self, other: "ExtNumber") -> "ExtNumber":
        return ext_mul(self, other)

    def __le__(self, other: "ExtNumber") -> bool:
        return ext_le(self, other)

    def __str__(self) -> str:
        return format_ext(self)

    def __repr__(self) -> str:
        return f"ExtNumber({format_ext(self)!r})"


ZERO = ExtNumber(BOTTOM, Mult.ZERO)
ONE = ExtNumber(0, Mult.REAL)


def inject(b: Weight) -> ExtNumber:
    """The canonical (non-additive) injection ``b -> b^v``."""
    return ExtNumber(b, Mult.REAL)


def ghost(b: Weight) -> ExtNumber:
    """``b^o = b^v + b^v``."""
    return ExtNumber(b, Mult.GHOST)


def project(e: ExtNumber) -> Weight:
    return e.magnitude


def ext_add(a: ExtNumber, b: ExtNumber) -> ExtNumber:
    if a.magnitude > b.magnitude:
        return a
    if b.magnitude > a.magnitude:
        return b
    if a.is_zero:
        return ZERO
    return ExtNumber(a.magnitude, a.mult + b.mult)


def ext_mul(a: ExtNumber, b: ExtNumber) -> ExtNumber:
    if a.is_zero or b.is_zero:
        return ZERO
    return ExtNumber(a.magnitude + b.magnitude, a.mult * b.mult)


def ext_sum(items) -> ExtNumber:
    total = ZERO
    for x in items:
        total = ext_add(total, x)
    return total


def balances(a: ExtNumber, b: ExtNumber) -> bool:
    """The balance relation: ``a + b`` is of ghost type."""
    return ext_add(a, b).is_ghost


def ext_le(x: ExtNumber, y: ExtNumber) -> bool:
    """Natural order: ``x <= y`` iff ``x + z == y`` for some ``z``."""
    if x.is_zero:
        return True
    if y.magnitude > x.magnitude:
        return True
    if y.magnitude < x.magnitude:
        return False
    return y == x or y.mult is Mult.GHOST


def ext_join(x: ExtNumber, y: ExtNumber) -> ExtNumber:
    """Least upper bound for the natural order (which is total on T_e)."""
    return y if ext_le(x, y) else x


def parse_ext(token: str) -> ExtNumber:
    tok = token.strip()
    if tok in ("-inf", "-oo"):
        return ZERO
    if tok.endswith("g"):
        body = tok[:-1]
        if body in ("-inf", "-oo"):
            return ZERO
        return ghost(int(body))
    return inject(int(tok))


def format_weight(a) -> str:
    if a == BOTTOM:
        return "-inf"
    if a == TOP:
        return "+inf"
    if isinstance(a, Fraction) and a.denominator == 1:
        return str(a.numerator)
    return str(a)


def format_ext(e: ExtNumber) -> str:
    if e.is_zero:
        return "-inf"
    s = format_weight(e.magnitude)
    return s + "g" if e.mult is Mult.GHOST else s
