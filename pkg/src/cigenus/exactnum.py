"""Exact integer/rational helpers.

Python ints are arbitrary precision and :class:`fractions.Fraction` is kept in
lowest terms with a positive denominator, so both are used directly as the
exact number types.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import InvalidInput

ExactInt = int
ExactRat = Fraction


def binom_trunc(a: int, b: int) -> int:
    """Binomial coefficient C(a, b), taken to be 0 whenever a < b.

    In particular every negative ``a`` gives 0, which lets alternating sums of
    shifted binomials be evaluated at every level.
    """
    if b < 0:
        raise InvalidInput(f"binom_trunc: lower index must be >= 0, got {b}")
    if a < b:
        return 0
    return comb(a, b)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def as_rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def rat_str(x) -> str:
    """Exact string form: ``"87/2"`` or ``"42"``."""
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_approx(x) -> float:
    """Decimal approximation rounded to 15 significant digits."""
    return float(f"{float(as_rat(x)):.15g}")


def parse_rat(s: str) -> Fraction:
    return Fraction(s)
