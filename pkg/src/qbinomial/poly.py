"""Dense polynomials in a single formal variable ``q``.

Coefficients are Python ints or :class:`fractions.Fraction`, so arithmetic
is exact at any size.  Index ``j`` of :attr:`QPolynomial.coefficients` holds
the coefficient of ``q**j``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from fractions import Fraction
from numbers import Rational
from typing import Union

Coefficient = Union[int, Fraction]


def _strip(coeffs: Iterable[Coefficient]) -> tuple[Coefficient, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class QPolynomial:
    """Immutable polynomial in ``q`` with exact coefficients.

    Trailing zero coefficients are dropped on construction, so two equal
    polynomials always have identical coefficient tuples.  The zero
    polynomial has an empty coefficient tuple and degree ``-1``.

    >>> p = QPolynomial([1, 1, 2, 1, 1])
    >>> p.degree, p(1)
    (4, 6)
    >>> str(p)
    '1 + q + 2*q^2 + q^3 + q^4'
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Coefficient] = ()) -> None:
        coeffs = _strip(coefficients)
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, (int, Rational)):
                raise TypeError(f"coefficient {c!r} is not an exact number")
        self._coeffs = coeffs

    @classmethod
    def constant(cls, value: Coefficient) -> QPolynomial:
        return cls((value,))

    @classmethod
    def monomial(cls, power: int, value: Coefficient = 1) -> QPolynomial:
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [value])

    @property
    def coefficients(self) -> tuple[Coefficient, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, j: int) -> Coefficient:
        """Coefficient of ``q**j``; zero for any ``j`` outside the support."""
        if 0 <= j < len(self._coeffs):
            return self._coeffs[j]
        return 0

    def __call__(self, q: Coefficient) -> Coefficient:
        """Evaluate exactly at ``q`` by Horner's rule."""
        acc: Coefficient = 0
        for c in reversed(self._coeffs):
            acc = acc * q + c
        return acc

    def shift(self, power: int) -> QPolynomial:
        """Multiply by ``q**power``."""
        if self.is_zero():
            return self
        return QPolynomial([0] * power + list(self._coeffs))

    def __iter__(self) -> Iterator[Coefficient]:
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Rational)):
            return self._coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: QPolynomial | Coefficient) -> QPolynomial:
        if isinstance(other, (int, Rational)):
            other = QPolynomial.constant(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> QPolynomial:
        return QPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: QPolynomial | Coefficient) -> QPolynomial:
        return self + (-other)

    def __rsub__(self, other: Coefficient) -> QPolynomial:
        return (-self) + other

    def __mul__(self, other: QPolynomial | Coefficient) -> QPolynomial:
        if isinstance(other, (int, Rational)):
            if other == 0:
                return QPolynomial()
            return QPolynomial(c * other for c in self._coeffs)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return QPolynomial()
        out: list[Coefficient] = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"QPolynomial({list(self._coeffs)!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("q" if j == 1 else f"q^{j}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif isinstance(c, Fraction) and c.denominator != 1:
                terms.append(f"({c})*{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)
