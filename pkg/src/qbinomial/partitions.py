"""Bounded integer partitions and Gaussian polynomials.

``P(k, m)`` is the set of partitions with at most ``k`` parts, none larger
than ``m``, padded with zeros to exactly ``k`` entries.  The Gaussian
polynomial ``[n choose k]_q`` is the generating function of ``P(k, n-k)``
by size, and is computed here with the q-Pascal recurrence::

    [n, k] = [n-1, k-1] + q**k * [n-1, k]

using integer additions only.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from ._util import as_fraction, binom
from .errors import CapExceededError
from .poly import QPolynomial

__all__ = [
    "BoundedPartition",
    "DEFAULT_ENUMERATION_CAP",
    "QPolynomial",
    "enumerate_partitions",
    "gaussian_polynomial",
    "gaussian_row",
    "partition_count",
    "rogers_szego_eval",
]

DEFAULT_ENUMERATION_CAP = 10**7

# Below this n, single-coefficient lookups are served from a cached full row.
_ROW_THRESHOLD = 64


@dataclass(frozen=True, order=True)
class BoundedPartition:
    """A weakly decreasing tuple of ``k`` nonnegative parts, each ``<= bound``."""

    parts: tuple[int, ...]
    bound: int

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if self.bound < 0:
            raise ValueError(f"bound must be nonnegative, got {self.bound}")
        if any(not isinstance(p, int) or p < 0 for p in parts):
            raise ValueError(f"parts must be nonnegative integers: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts are not weakly decreasing: {parts}")
        if parts and parts[0] > self.bound:
            raise ValueError(f"part {parts[0]} exceeds bound {self.bound}")

    @property
    def k(self) -> int:
        return len(self.parts)

    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, j: int) -> int:
        return self.parts[j]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def _check_nonneg(**kwargs: int) -> None:
    for name, value in kwargs.items():
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")


def _descending(k: int, top: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(top, -1, -1):
        for rest in _descending(k - 1, first):
            yield (first,) + rest


def enumerate_partitions(
    k: int, m: int, *, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[BoundedPartition]:
    """List every element of ``P(k, m)`` exactly once.

    Partitions come out in lexicographically descending order of their
    part tuples, so ``(m, ..., m)`` is first and the all-zeros partition
    is last.  The list has ``binom(k + m, k)`` elements; a
    :class:`CapExceededError` is raised if that exceeds ``cap``.
    """
    _check_nonneg(k=k, m=m)
    total = binom(k + m, k)
    if total > cap:
        raise CapExceededError(
            f"P({k},{m}) has {total} elements, above the cap of {cap}"
        )
    return [BoundedPartition(parts, m) for parts in _descending(k, m)]


def _add_shifted(a: tuple[int, ...], b: tuple[int, ...], shift: int) -> tuple[int, ...]:
    """Coefficients of ``a + q**shift * b``."""
    if not b:
        return a
    out = list(a)
    need = len(b) + shift
    if len(out) < need:
        out.extend([0] * (need - len(out)))
    for j, v in enumerate(b, start=shift):
        out[j] += v
    return tuple(out)


def _pascal_band(n: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    """Coefficient tuples of ``[n, j]`` for ``lo <= j <= hi``.

    Row ``m`` of the triangle only needs the columns that can still reach
    the requested band at row ``n``, i.e. ``lo - (n - m) <= j <= hi``.
    """
    row: dict[int, tuple[int, ...]] = {0: (1,)}
    for m in range(1, n + 1):
        j_lo = max(0, lo - (n - m))
        j_hi = min(m, hi)
        nxt: dict[int, tuple[int, ...]] = {}
        for j in range(j_lo, j_hi + 1):
            left = row.get(j - 1, ())
            right = row.get(j, ()) if j < m else ()
            nxt[j] = _add_shifted(left, right, j)
        row = nxt
    return [row[j] for j in range(lo, hi + 1)]


@lru_cache(maxsize=16)
def gaussian_row(n: int) -> tuple[tuple[int, ...], ...]:
    """Coefficient tuples of ``[n, k]`` for every ``0 <= k <= n``."""
    _check_nonneg(n=n)
    return tuple(_pascal_band(n, 0, n))


@lru_cache(maxsize=4096)
def _gaussian_coeffs(n: int, k: int) -> tuple[int, ...]:
    if n <= _ROW_THRESHOLD:
        return gaussian_row(n)[k]
    return _pascal_band(n, k, k)[0]


def gaussian_polynomial(n: int, k: int) -> QPolynomial:
    """The Gaussian polynomial ``[n choose k]_q``.

    For ``0 <= k <= n`` the result has degree ``k*(n-k)`` and its ``q**j``
    coefficient is the number of partitions of ``j`` in ``P(k, n-k)``.
    Any other ``k`` gives the zero polynomial.

    >>> gaussian_polynomial(4, 2).coefficients
    (1, 1, 2, 1, 1)
    """
    _check_nonneg(n=n)
    if k < 0 or k > n:
        return QPolynomial()
    return QPolynomial(_gaussian_coeffs(n, min(k, n - k)))


def partition_count(k: int, m: int, t: int) -> int:
    """Number of partitions of ``t`` with at most ``k`` parts, each ``<= m``."""
    _check_nonneg(k=k, m=m)
    if t < 0 or t > k * m:
        return 0
    return gaussian_polynomial(k + m, k).coeff(t)


def rogers_szego_eval(n: int, z: Rational | int | str) -> QPolynomial:
    """Rogers-Szego polynomial ``H_n(q; z) = sum_k [n choose k]_q z**k``.

    ``z`` is a fixed exact rational, so the result is a polynomial in ``q``
    with Fraction coefficients.
    """
    _check_nonneg(n=n)
    z = as_fraction(z)
    out = [Fraction(0)] * (n * n // 4 + 1)
    zk = Fraction(1)
    for coeffs in gaussian_row(n):
        for j, c in enumerate(coeffs):
            out[j] += c * zk
        zk *= z
    return QPolynomial(out)
