"""Exact cross-checks of every closed form against brute-force enumeration."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .distribution import (
    ExperimentParams,
    conditional_T_given_Y,
    conditional_T_moments,
    joint_pmf_table,
    lemma_sums,
    marginal_T,
    marginal_Y,
    moments,
    q_generalized_pmf,
)
from .errors import ConsistencyError
from .oracle import enumerate_outcomes, oracle_joint_pmf, oracle_moment
from .partitions import rogers_szego_eval
from .poly import QPolynomial
from .words import expand_noncommutative, word_to_partition, words_of_length

DEFAULT_PI_GRID = (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10))


@dataclass(frozen=True)
class CheckResult:
    name: str
    n: int
    pi: Fraction | None
    passed: bool
    detail: str = ""

    def line(self) -> str:
        where = f"n={self.n}" + (f" pi={self.pi}" if self.pi is not None else "")
        status = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{status} {self.name:<14} {where}{tail}"


def check_expansion(n: int) -> CheckResult:
    pairs = expand_noncommutative(n)
    words = [w for _, w in pairs]
    if len(words) != 2**n or len(set(words)) != 2**n:
        return CheckResult("expansion", n, None, False, f"{len(set(words))} distinct of {len(words)}")
    if set(words) != set(words_of_length(n)):
        return CheckResult("expansion", n, None, False, "word set differs from all 2^n words")
    for lam, w in pairs:
        back = word_to_partition(w)
        if back != lam:
            return CheckResult("expansion", n, None, False, f"{lam} -> {w} -> {back}")
    return CheckResult("expansion", n, None, True)


def check_lemma(n: int) -> CheckResult:
    for k in range(n + 1):
        try:
            lemma_sums(n, k)
        except ConsistencyError as exc:
            return CheckResult("lemma", n, None, False, str(exc))
    return CheckResult("lemma", n, None, True)


def check_distribution(params: ExperimentParams) -> Iterator[CheckResult]:
    n, pi = params.n, params.pi
    table = joint_pmf_table(params)
    records = enumerate_outcomes(params)
    oracle = oracle_joint_pmf(params, records=records)

    diff = table.first_difference(oracle)
    yield CheckResult(
        "oracle-table", n, pi, diff is None and table.total() == 1,
        "" if diff is None else f"cell {diff[0]}: closed {diff[1]} != oracle {diff[2]}",
    )

    bad = ""
    for k, p in oracle.marginal_Y().items():
        if p != marginal_Y(params, k):
            bad = f"P(Y={k}): oracle {p} != {marginal_Y(params, k)}"
            break
    else:
        for t, p in oracle.marginal_T().items():
            if p != marginal_T(params, t):
                bad = f"P(T={t}): oracle {p} != {marginal_T(params, t)}"
                break
    yield CheckResult("marginals", n, pi, not bad, bad)

    bad = ""
    for (k, t), p in oracle.entries.items():
        rhs = conditional_T_given_Y(n, k, t) * marginal_Y(params, k)
        if p != rhs:
            bad = f"cell {(k, t)}: {p} != {rhs}"
            break
    yield CheckResult("chain-rule", n, pi, not bad, bad)

    closed = moments(params)
    bad = ""
    for field, selector in (
        ("e_y", "E_Y"), ("e_t", "E_T"), ("e_t2", "E_T2"),
        ("v_t", "V_T"), ("e_yt", "E_YT"), ("cov_yt", "COV_YT"),
    ):
        want = oracle_moment(params, selector, records=records)
        got = getattr(closed, field)
        if got != want:
            bad = f"{field}: closed {got} != oracle {want}"
            break
    else:
        for k in range(n + 1):
            mean = oracle_moment(params, "E_T_given_Y", k=k, records=records)
            var = oracle_moment(params, "V_T_given_Y", k=k, records=records)
            if (mean, var) != conditional_T_moments(n, k):
                bad = f"T|Y={k}: oracle {(mean, var)} != {conditional_T_moments(n, k)}"
                break
    yield CheckResult("moments", n, pi, not bad, bad)

    lhs = sum((q_generalized_pmf(params, k) for k in range(n + 1)), QPolynomial())
    rhs = rogers_szego_eval(n, params.theta) * (1 - pi) ** n
    ok = lhs == rhs and lhs(1) == 1
    yield CheckResult("rogers-szego", n, pi, ok, "" if ok else f"{lhs} != {rhs}")


def run_checks(
    n_max: int, pis: Sequence[Fraction] = DEFAULT_PI_GRID
) -> Iterator[CheckResult]:
    """Yield one result per check for every ``n <= n_max`` and every ``pi``."""
    for n in range(n_max + 1):
        yield check_expansion(n)
        yield check_lemma(n)
        for pi in pis:
            yield from check_distribution(ExperimentParams(n, pi))
