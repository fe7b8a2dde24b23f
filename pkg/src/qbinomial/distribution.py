"""Exact joint distribution of the success count Y and inversion count T.

For ``n`` Bernoulli trials with success probability ``pi``::

    P(Y=k, T=t) = #P(k, n-k)(t) * (1-pi)**(n-k) * pi**k

Every probability here is a :class:`fractions.Fraction`.  Polynomials in
``q`` are returned as :class:`~qbinomial.poly.QPolynomial` and are never
evaluated at numeric ``q`` except ``q = 1`` and in
:func:`referee_normalized_pmf`.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import TypeAlias

from ._util import as_fraction, binom
from .errors import CapExceededError, ConsistencyError, ZeroProbabilityError
from .partitions import (
    gaussian_polynomial,
    gaussian_row,
    partition_count,
    rogers_szego_eval,
)
from .poly import QPolynomial

Prob: TypeAlias = Fraction

DEFAULT_TABLE_CAP = 200

__all__ = [
    "DEFAULT_TABLE_CAP",
    "ExperimentParams",
    "JointPmfTable",
    "MomentSummary",
    "Prob",
    "conditional_T_given_Y",
    "conditional_T_moments",
    "conditional_Y_given_T",
    "conditional_Y_moment",
    "joint_pmf",
    "joint_pmf_table",
    "lemma_closed_forms",
    "lemma_sums",
    "marginal_T",
    "marginal_Y",
    "moments",
    "moments_from_table",
    "q_generalized_pmf",
    "referee_normalized_pmf",
]


@dataclass(frozen=True)
class ExperimentParams:
    """``n`` trials, each a success with probability ``pi`` (``0 < pi < 1``)."""

    n: int
    pi: Fraction

    def __post_init__(self) -> None:
        pi = as_fraction(self.pi)
        object.__setattr__(self, "pi", pi)
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {self.n!r}")
        if not 0 < pi < 1:
            raise ValueError(f"pi must satisfy 0 < pi < 1, got {pi}")

    @property
    def fail(self) -> Fraction:
        return 1 - self.pi

    @property
    def theta(self) -> Fraction:
        """Odds of success, ``pi / (1 - pi)``."""
        return self.pi / (1 - self.pi)

    def weight(self, k: int) -> Fraction:
        """Probability of any single word with ``k`` successes."""
        return self.fail ** (self.n - k) * self.pi**k

    def max_t(self) -> int:
        return self.n * self.n // 4


@dataclass(frozen=True)
class JointPmfTable:
    """``P(Y=k, T=t)`` keyed by ``(k, t)``; absent cells are zero."""

    params: ExperimentParams
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __getitem__(self, cell: tuple[int, int]) -> Fraction:
        return self.entries.get(cell, Fraction(0))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def cells(self) -> list[tuple[int, int, Fraction]]:
        """Nonzero cells sorted by ``(k, t)``."""
        return [(k, t, p) for (k, t), p in sorted(self.entries.items()) if p]

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def marginal_Y(self) -> dict[int, Fraction]:
        out = {k: Fraction(0) for k in range(self.params.n + 1)}
        for (k, _), p in self.entries.items():
            out[k] += p
        return out

    def marginal_T(self) -> dict[int, Fraction]:
        out = {t: Fraction(0) for t in range(self.params.max_t() + 1)}
        for (_, t), p in self.entries.items():
            out[t] += p
        return out

    def first_difference(
        self, other: JointPmfTable
    ) -> tuple[tuple[int, int], Fraction, Fraction] | None:
        """The first cell (in ``(k, t)`` order) where the two tables disagree."""
        for cell in sorted(set(self.entries) | set(other.entries)):
            a, b = self[cell], other[cell]
            if a != b:
                return cell, a, b
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JointPmfTable):
            return NotImplemented
        return self.params == other.params and self.first_difference(other) is None


@dataclass(frozen=True)
class MomentSummary:
    """Raw and central moments of ``(Y, T)`` plus ``E(T|Y=k)``, ``V(T|Y=k)`` per ``k``."""

    e_y: Fraction
    e_t: Fraction
    e_t2: Fraction
    v_t: Fraction
    e_yt: Fraction
    cov_yt: Fraction
    conditional: dict[int, tuple[Fraction, Fraction]]


def _coefficients(n: int, k: int) -> tuple[int, ...]:
    if k < 0 or k > n:
        return ()
    return gaussian_polynomial(n, k).coefficients


def q_generalized_pmf(params: ExperimentParams, k: int) -> QPolynomial:
    """``[n choose k]_q (1-pi)**(n-k) pi**k`` as a polynomial in ``q``.

    Not a probability: the coefficients sum to ``P(Y=k)`` and the value at
    ``q = 1`` is the classical binomial pmf.
    """
    if k < 0 or k > params.n:
        return QPolynomial()
    return gaussian_polynomial(params.n, k) * params.weight(k)


def joint_pmf(params: ExperimentParams, k: int, t: int) -> Fraction:
    if k < 0 or k > params.n:
        return Fraction(0)
    return partition_count(k, params.n - k, t) * params.weight(k)


def joint_pmf_table(
    params: ExperimentParams, *, cap: int = DEFAULT_TABLE_CAP
) -> JointPmfTable:
    """Every support cell ``0 <= k <= n``, ``0 <= t <= k(n-k)``.

    Gaussian coefficients have no internal zeros, so every stored cell is
    strictly positive.
    """
    n = params.n
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the table cap of {cap}")
    entries = {}
    for k, coeffs in enumerate(gaussian_row(n)):
        w = params.weight(k)
        for t, c in enumerate(coeffs):
            entries[(k, t)] = c * w
    return JointPmfTable(params, entries)


def marginal_T(params: ExperimentParams, t: int) -> Fraction:
    n = params.n
    if t < 0 or t > params.max_t():
        return Fraction(0)
    total = Fraction(0)
    for k in range(n + 1):
        if t <= k * (n - k):
            total += partition_count(k, n - k, t) * params.weight(k)
    return total


def marginal_Y(params: ExperimentParams, k: int) -> Fraction:
    if k < 0 or k > params.n:
        return Fraction(0)
    return binom(params.n, k) * params.weight(k)


def conditional_T_given_Y(n: int, k: int, t: int) -> Fraction:
    """``#P(k, n-k)(t) / binom(n, k)``; free of ``pi``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return Fraction(partition_count(k, n - k, t), binom(n, k))


def _theta_weights(params: ExperimentParams, t: int) -> dict[int, Fraction]:
    n, theta = params.n, params.theta
    weights = {}
    for k in range(n + 1):
        c = partition_count(k, n - k, t)
        if c:
            weights[k] = c * theta**k
    if not weights:
        raise ZeroProbabilityError(f"P(T={t}) = 0 for n={n}; cannot condition on it")
    return weights


def conditional_Y_given_T(params: ExperimentParams, t: int, k: int) -> Fraction:
    """``P(Y=k | T=t)``, computed through the odds ``theta = pi/(1-pi)``."""
    weights = _theta_weights(params, t)
    return weights.get(k, Fraction(0)) / sum(weights.values())


def conditional_Y_moment(params: ExperimentParams, t: int, r: int) -> Fraction:
    """``E(Y**r | T=t)`` by direct summation over the conditional pmf."""
    if r < 1:
        raise ValueError(f"r must be a positive integer, got {r}")
    weights = _theta_weights(params, t)
    total = sum(weights.values())
    return sum((k**r * w for k, w in weights.items()), Fraction(0)) / total


def lemma_closed_forms(n: int, k: int) -> tuple[int, Fraction]:
    """Closed forms for ``sum_j j*c_j`` and ``sum_j j**2*c_j`` over ``[n choose k]_q``."""
    first = binom(n, 2) * binom(n - 2, k - 1)
    second = binom(n, k) * Fraction(k * (n - k), 12) * (n + 1 + 3 * k * (n - k))
    return first, second


def lemma_sums(n: int, k: int) -> tuple[int, Fraction]:
    """Weighted coefficient sums of ``[n choose k]_q``, checked against closed forms.

    Returns ``(sum_j j*c_j, sum_j j**2*c_j)``.  Raises
    :class:`ConsistencyError` if direct summation and the closed forms
    disagree.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    coeffs = _coefficients(n, k)
    first = sum(j * c for j, c in enumerate(coeffs))
    second = sum(j * j * c for j, c in enumerate(coeffs))
    closed = lemma_closed_forms(n, k)
    if (first, second) != closed:
        raise ConsistencyError(
            f"lemma sums for n={n}, k={k}: direct {(first, second)} != closed {closed}"
        )
    return first, Fraction(second)


def conditional_T_moments(n: int, k: int) -> tuple[Fraction, Fraction]:
    """``(E(T|Y=k), V(T|Y=k)) = (k(n-k)/2, k(n-k)(n+1)/12)``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    kk = k * (n - k)
    return Fraction(kk, 2), Fraction(kk * (n + 1), 12)


def moments(params: ExperimentParams) -> MomentSummary:
    """Closed-form moments of ``(Y, T)``."""
    n, pi = params.n, params.pi
    pq = pi * (1 - pi)
    base = binom(n, 2) * pq
    e_t = base
    e_t2 = base * (Fraction(2 * n - 1, 3) + binom(n - 2, 2) * pq)
    v_t = base * (Fraction(2 * n - 1, 3) - pq * (2 * n - 3))
    e_yt = base * (pi * (n - 2) + 1)
    cov_yt = base * (1 - 2 * pi)
    return MomentSummary(
        e_y=n * pi,
        e_t=e_t,
        e_t2=e_t2,
        v_t=v_t,
        e_yt=e_yt,
        cov_yt=cov_yt,
        conditional={k: conditional_T_moments(n, k) for k in range(n + 1)},
    )


def moments_from_table(table: JointPmfTable) -> MomentSummary:
    """Moments by direct summation over a joint table.

    Works equally on :func:`joint_pmf_table` output and on the brute-force
    table from :mod:`qbinomial.oracle`.
    """
    n = table.params.n
    e_y = e_t = e_t2 = e_yt = Fraction(0)
    by_k: dict[int, list[Fraction]] = {k: [Fraction(0)] * 3 for k in range(n + 1)}
    for (k, t), p in table.entries.items():
        e_y += k * p
        e_t += t * p
        e_t2 += t * t * p
        e_yt += k * t * p
        acc = by_k[k]
        acc[0] += p
        acc[1] += t * p
        acc[2] += t * t * p
    conditional = {}
    for k, (pk, s1, s2) in by_k.items():
        if pk:
            mean = s1 / pk
            conditional[k] = (mean, s2 / pk - mean * mean)
    return MomentSummary(
        e_y=e_y,
        e_t=e_t,
        e_t2=e_t2,
        v_t=e_t2 - e_t * e_t,
        e_yt=e_yt,
        cov_yt=e_yt - e_y * e_t,
        conditional=conditional,
    )


def referee_normalized_pmf(
    params: ExperimentParams, q_value: Rational | int | str, k: int
) -> Fraction:
    """``[n choose k]_q * theta**k / H_n(q; theta)`` at a fixed numeric ``q > 0``.

    Sums to one over ``k`` for every ``q``, but for ``q != 1`` it no longer
    describes the number of successes in independent Bernoulli trials.  It
    is offered only as the normalized alternative, separate from the formal
    polynomial API.
    """
    q = as_fraction(q_value)
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    n = params.n
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    pi = params.pi
    numerator = gaussian_polynomial(n, k)(q) * pi**k
    return numerator / ((1 - pi) ** k * rogers_szego_eval(n, params.theta)(q))
