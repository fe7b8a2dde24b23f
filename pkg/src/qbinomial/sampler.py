"""Monte-Carlo simulation of the binomial experiment and homogeneity reports.

Random numbers come from numpy's Philox4x64 counter-based generator.  A
batch is cut into fixed-size chunks, and chunk ``c`` is seeded with
``SeedSequence(seed, spawn_key=(c,))``.  Chunks are the unit of work, so a
batch depends only on ``(params, seed, count)``.  The number of lanes used
to run the chunks has no effect on the result.

A trial is a success when a raw 64-bit output ``u`` satisfies
``u < floor(pi * 2**64)``.  The threshold is computed exactly from the
rational ``pi``, so each draw is biased by less than ``2**-64``.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

import numpy as np

from .distribution import ExperimentParams, conditional_T_given_Y, conditional_T_moments
from .words import FAILURE, SUCCESS, Word, inversions

__all__ = [
    "CHUNK_SIZE",
    "HomogeneityReport",
    "SampleBatch",
    "homogeneity_report",
    "make_rng",
    "run_batch",
    "sample_sequence",
    "success_threshold",
]

CHUNK_SIZE = 1 << 16
_PACKED_MAX_N = 62


def success_threshold(pi: Fraction) -> int:
    """``floor(pi * 2**64)``; a raw draw below this is a success."""
    return (pi.numerator << 64) // pi.denominator


def _seed_sequence(seed: int, chunk: int | None = None) -> np.random.SeedSequence:
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if chunk is None:
        return np.random.SeedSequence(seed)
    return np.random.SeedSequence(seed, spawn_key=(chunk,))


def make_rng(seed: int) -> np.random.Philox:
    """A Philox bit generator seeded from a 64-bit integer."""
    return np.random.Philox(_seed_sequence(seed))


def _draw(bitgen: np.random.BitGenerator, params: ExperimentParams, rows: int) -> np.ndarray:
    raw = bitgen.random_raw(rows * params.n).reshape(rows, params.n)
    return raw < np.uint64(success_threshold(params.pi))


def sample_sequence(
    params: ExperimentParams, rng: np.random.BitGenerator | int
) -> Word:
    """One simulated outcome of ``n`` trials.

    ``rng`` is a numpy bit generator (advanced in place) or an integer seed.
    """
    if isinstance(rng, int):
        rng = make_rng(rng)
    row = _draw(rng, params, 1)[0]
    return Word("".join(SUCCESS if s else FAILURE for s in row))


@dataclass(frozen=True)
class SampleBatch:
    """Counts of ``(k, t)`` over ``count`` simulated outcomes plus exact raw sums."""

    params: ExperimentParams
    seed: int
    count: int
    counts: dict[tuple[int, int], int] = field(default_factory=dict)
    sum_y: int = 0
    sum_y2: int = 0
    sum_t: int = 0
    sum_t2: int = 0
    sum_yt: int = 0

    def frequency(self, k: int, t: int) -> float:
        return self.counts.get((k, t), 0) / self.count

    @property
    def mean_y(self) -> float:
        return self.sum_y / self.count

    @property
    def mean_t(self) -> float:
        return self.sum_t / self.count

    @property
    def var_t(self) -> float:
        """Empirical variance of T (divides by ``count``)."""
        return float(Fraction(self.sum_t2, self.count) - Fraction(self.sum_t, self.count) ** 2)

    @property
    def mean_yt(self) -> float:
        return self.sum_yt / self.count

    @property
    def cov_yt(self) -> float:
        return float(
            Fraction(self.sum_yt, self.count)
            - Fraction(self.sum_y, self.count) * Fraction(self.sum_t, self.count)
        )

    def summary(self) -> dict:
        return {
            "n": self.params.n,
            "pi": str(self.params.pi),
            "seed": self.seed,
            "count": self.count,
            "mean_y": self.mean_y,
            "mean_t": self.mean_t,
            "var_t": self.var_t,
            "mean_yt": self.mean_yt,
            "cov_yt": self.cov_yt,
            "cells": len(self.counts),
        }


def _chunk_codes(params: ExperimentParams, seed: int, chunk: int, rows: int) -> Counter:
    bitgen = np.random.Philox(_seed_sequence(seed, chunk))
    success = _draw(bitgen, params, rows)
    n = params.n
    if n <= _PACKED_MAX_N:
        # Leftmost trial is the most significant bit, matching binary word order.
        weights = np.left_shift(np.int64(1), np.arange(n - 1, -1, -1, dtype=np.int64))
        codes = success.astype(np.int64) @ weights if n else np.zeros(rows, np.int64)
        uniq, cnt = np.unique(codes, return_counts=True)
        return Counter(dict(zip(uniq.tolist(), cnt.tolist())))
    packed = np.packbits(success, axis=1)
    uniq, cnt = np.unique(packed, axis=0, return_counts=True)
    return Counter({row.tobytes(): c for row, c in zip(uniq, cnt.tolist())})


def _decode(code: int | bytes, n: int) -> Word:
    if isinstance(code, bytes):
        bits = np.unpackbits(np.frombuffer(code, dtype=np.uint8))[:n]
        return Word("".join(SUCCESS if b else FAILURE for b in bits))
    if n == 0:
        return Word("")
    return Word(format(code, f"0{n}b").replace("0", FAILURE).replace("1", SUCCESS))


def run_batch(
    params: ExperimentParams,
    seed: int,
    count: int,
    *,
    lanes: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> SampleBatch:
    """Simulate ``count`` outcomes and tabulate ``(Y, T)``.

    Each distinct simulated word is scored once with
    :func:`qbinomial.words.inversions`.  The result is identical for every
    value of ``lanes``; ``chunk_size`` is part of the reproducibility key.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    if lanes < 1:
        raise ValueError(f"lanes must be positive, got {lanes}")
    _seed_sequence(seed)
    jobs = [
        (c, min(chunk_size, count - c * chunk_size))
        for c in range(-(-count // chunk_size))
    ]
    if lanes == 1:
        parts = [_chunk_codes(params, seed, c, rows) for c, rows in jobs]
    else:
        with ThreadPoolExecutor(max_workers=lanes) as pool:
            parts = list(pool.map(lambda job: _chunk_codes(params, seed, *job), jobs))
    merged: Counter = Counter()
    for part in parts:
        merged.update(part)

    counts: Counter = Counter()
    sums = dict.fromkeys(("sum_y", "sum_y2", "sum_t", "sum_t2", "sum_yt"), 0)
    for code in sorted(merged):
        c = merged[code]
        word = _decode(code, params.n)
        k, t = word.successes(), inversions(word)
        counts[(k, t)] += c
        sums["sum_y"] += k * c
        sums["sum_y2"] += k * k * c
        sums["sum_t"] += t * c
        sums["sum_t2"] += t * t * c
        sums["sum_yt"] += k * t * c
    return SampleBatch(params, seed, count, dict(sorted(counts.items())), **sums)


@dataclass(frozen=True)
class HomogeneityReport:
    """Where an observed ``t`` falls in the conditional law of ``T`` given ``Y = k``.

    ``percentile`` is ``P(T <= t | Y = k)`` and ``lower_tail`` is
    ``P(T < t | Y = k)``, both exact.
    """

    word: str
    n: int
    k: int
    t: int
    max_t: int
    mean: Fraction
    variance: Fraction
    lower_tail: Fraction
    percentile: Fraction
    classification: str

    @property
    def std(self) -> float:
        return sqrt(self.variance)

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": x.numerator, "den": x.denominator, "decimal": repr(float(x))}

        return {
            "word": self.word,
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "max_t": self.max_t,
            "mean": frac(self.mean),
            "variance": frac(self.variance),
            "lower_tail": frac(self.lower_tail),
            "percentile": frac(self.percentile),
            "classification": self.classification,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


WELL_MIXED = "well mixed"
FAILURES_FIRST = "failures front-loaded"
SUCCESSES_FIRST = "successes front-loaded"
DEGENERATE = "degenerate"


def homogeneity_report(
    observed: Word | str, *, band: Fraction = Fraction(1, 3)
) -> HomogeneityReport:
    """Report how well mixed the successes and failures of ``observed`` are.

    ``t`` is placed on the range ``0..k(n-k)``.  Within the lowest ``band``
    fraction the failures came first.  Within the top ``band`` fraction the
    successes came first.  Anything in between counts as well mixed.  When
    ``k`` is ``0`` or ``n``, ``T`` is identically zero and the report is
    marked degenerate.
    """
    word = observed if isinstance(observed, Word) else Word.parse(observed)
    n = len(word)
    if n == 0:
        raise ValueError("cannot report on an empty word")
    k, t = word.successes(), inversions(word)
    max_t = k * (n - k)
    mean, variance = conditional_T_moments(n, k)
    lower = sum((conditional_T_given_Y(n, k, s) for s in range(t)), Fraction(0))
    upto = lower + conditional_T_given_Y(n, k, t)
    if max_t == 0:
        label = DEGENERATE
    else:
        pos = Fraction(t, max_t)
        if pos < band:
            label = FAILURES_FIRST
        elif pos > 1 - band:
            label = SUCCESSES_FIRST
        else:
            label = WELL_MIXED
    return HomogeneityReport(
        word=word.symbols,
        n=n,
        k=k,
        t=t,
        max_t=max_t,
        mean=mean,
        variance=variance,
        lower_tail=lower,
        percentile=upto,
        classification=label,
    )
