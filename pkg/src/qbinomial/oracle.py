"""Brute-force ground truth: enumerate all ``2**n`` outcomes.

Nothing here touches Gaussian polynomials or partition counts.  Each word
is scored directly with :func:`qbinomial.words.inversions`, and every
expectation is a plain weighted sum over outcomes.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .distribution import ExperimentParams, JointPmfTable
from .errors import CapExceededError, ZeroProbabilityError
from .words import Word, inversions, words_of_length

__all__ = [
    "DEFAULT_ORACLE_CAP",
    "OutcomeRecord",
    "SELECTORS",
    "enumerate_outcomes",
    "oracle_joint_pmf",
    "oracle_moment",
]

DEFAULT_ORACLE_CAP = 20


@dataclass(frozen=True)
class OutcomeRecord:
    word: Word
    k: int
    t: int
    prob: Fraction


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the oracle cap of {cap}")


def enumerate_outcomes(
    params: ExperimentParams, *, cap: int = DEFAULT_ORACLE_CAP
) -> list[OutcomeRecord]:
    """One record per word, in binary order with ``F = 0`` and ``S = 1``."""
    n = params.n
    _check_cap(n, cap)
    pi, fail = params.pi, 1 - params.pi
    out = []
    for word in words_of_length(n):
        k = word.successes()
        out.append(OutcomeRecord(word, k, inversions(word), pi**k * fail ** (n - k)))
    return out


def oracle_joint_pmf(
    params: ExperimentParams,
    *,
    cap: int = DEFAULT_ORACLE_CAP,
    records: Sequence[OutcomeRecord] | None = None,
) -> JointPmfTable:
    """Sum outcome probabilities grouped by ``(k, t)``."""
    if records is None:
        records = enumerate_outcomes(params, cap=cap)
    entries: dict[tuple[int, int], Fraction] = {}
    for rec in records:
        key = (rec.k, rec.t)
        entries[key] = entries.get(key, Fraction(0)) + rec.prob
    return JointPmfTable(params, entries)


def _expect(records, f, where=None) -> Fraction:
    num = Fraction(0)
    mass = Fraction(0)
    for rec in records:
        if where is None or where(rec):
            num += f(rec) * rec.prob
            mass += rec.prob
    if mass == 0:
        raise ZeroProbabilityError("conditioning event has probability zero")
    return num / mass


SELECTORS = (
    "E_Y",
    "E_T",
    "E_T2",
    "V_T",
    "E_YT",
    "COV_YT",
    "E_T_given_Y",
    "E_T2_given_Y",
    "V_T_given_Y",
    "E_Y_given_T",
    "E_Y2_given_T",
)


def oracle_moment(
    params: ExperimentParams,
    which: str,
    *,
    k: int | None = None,
    t: int | None = None,
    cap: int = DEFAULT_ORACLE_CAP,
    records: Sequence[OutcomeRecord] | None = None,
) -> Fraction:
    """Expectation named by ``which`` (see :data:`SELECTORS`) over all outcomes.

    The ``*_given_Y`` selectors need ``k``; the ``*_given_T`` ones need ``t``.
    Pass ``records`` to reuse one enumeration across several calls.
    """
    if which not in SELECTORS:
        raise ValueError(f"unknown selector {which!r}; expected one of {SELECTORS}")
    if records is None:
        records = enumerate_outcomes(params, cap=cap)

    if which.endswith("_given_Y"):
        if k is None:
            raise ValueError(f"{which} requires k")
        given = lambda r: r.k == k  # noqa: E731
    elif which.endswith("_given_T"):
        if t is None:
            raise ValueError(f"{which} requires t")
        given = lambda r: r.t == t  # noqa: E731
    else:
        given = None

    if which == "E_Y":
        return _expect(records, lambda r: r.k)
    if which == "E_T":
        return _expect(records, lambda r: r.t)
    if which == "E_T2":
        return _expect(records, lambda r: r.t * r.t)
    if which == "E_YT":
        return _expect(records, lambda r: r.k * r.t)
    if which == "V_T":
        m = _expect(records, lambda r: r.t)
        return _expect(records, lambda r: (r.t - m) ** 2)
    if which == "COV_YT":
        my = _expect(records, lambda r: r.k)
        mt = _expect(records, lambda r: r.t)
        return _expect(records, lambda r: (r.k - my) * (r.t - mt))
    if which == "E_T_given_Y":
        return _expect(records, lambda r: r.t, given)
    if which == "E_T2_given_Y":
        return _expect(records, lambda r: r.t * r.t, given)
    if which == "V_T_given_Y":
        m = _expect(records, lambda r: r.t, given)
        return _expect(records, lambda r: (r.t - m) ** 2, given)
    if which == "E_Y_given_T":
        return _expect(records, lambda r: r.k, given)
    return _expect(records, lambda r: r.k * r.k, given)
