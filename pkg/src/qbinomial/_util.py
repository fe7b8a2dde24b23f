from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def as_fraction(value: Rational | int | str) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings may be fractions ("3/10") or decimals ("0.3"); decimals are
    converted exactly.  Floats are refused because they are never exact
    in the sense callers usually mean.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}; pass a Fraction or a string such as '0.3'"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")
