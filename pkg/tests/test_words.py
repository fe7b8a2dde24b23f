from collections import Counter
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbinomial.errors import CapExceededError
from qbinomial.partitions import BoundedPartition, enumerate_partitions, partition_count
from qbinomial.words import (
    Transposition,
    Word,
    apply_qlambda,
    expand_noncommutative,
    inversions,
    qlambda_transpositions,
    word_to_partition,
    words_of_length,
)

words = st.text(alphabet="FS", max_size=16).map(Word)


def pair_inversions(w):
    """O(n^2) count straight from the definition."""
    s = str(w)
    return sum(
        1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] == "S" and s[j] == "F"
    )


# -- Word / Transposition -----------------------------------------------------


def test_word_rejects_other_symbols():
    with pytest.raises(ValueError):
        Word("FSX")
    with pytest.raises(ValueError):
        Word("xy")


def test_word_basics():
    w = Word.parse(" FFSFFSFS\n")
    assert str(w) == "FFSFFSFS"
    assert w.successes() == 3 and w.failures() == 5 and len(w) == 8
    assert w.as_monomial() == "xxyxxyxy"


def test_identity_transposition():
    w = Word("FSF")
    assert Transposition(2, 2).apply(w) == w


def test_transposition_swaps_one_based_positions():
    assert Transposition(1, 3).apply(Word("SFF")) == Word("FFS")


def test_transposition_out_of_range():
    with pytest.raises(ValueError):
        Transposition(0, 2).apply(Word("FS"))
    with pytest.raises(ValueError):
        Transposition(1, 3).apply(Word("FS"))


# -- apply_qlambda ------------------------------------------------------------


def test_worked_example_310():
    assert qlambda_transpositions((3, 1, 0), 8, 3) == [
        Transposition(6, 3), Transposition(7, 6), Transposition(8, 8)
    ]
    assert apply_qlambda((3, 1, 0), 8, 3) == Word("FFSFFSFS")


def test_zero_partition_is_identity():
    for n in range(7):
        for k in range(n + 1):
            assert apply_qlambda((0,) * k, n, k) == Word("F" * (n - k) + "S" * k)


def test_qlambda_22():
    assert apply_qlambda(BoundedPartition((2, 2), 2), 4, 2) == Word("SSFF")


@pytest.mark.parametrize(
    "lam,n,k",
    [((3,), 4, 2), ((1, 0, 0), 4, 2), ((2, 3), 6, 2), ((5,), 4, 1)],
)
def test_qlambda_precondition(lam, n, k):
    with pytest.raises(ValueError):
        apply_qlambda(lam, n, k)


# -- inversions / word_to_partition ------------------------------------------


@pytest.mark.parametrize(
    "word,expected", [("FFSFFSFS", 4), ("SSFF", 4), ("FFFSS", 0), ("", 0), ("SF", 1)]
)
def test_inversion_examples(word, expected):
    assert inversions(word) == expected


@pytest.mark.parametrize(
    "word,parts",
    [("FFSFFSFS", (3, 1, 0)), ("FFFSS", (0, 0)), ("SFFS", (2, 0)), ("FFF", ())],
)
def test_word_to_partition_examples(word, parts):
    lam = word_to_partition(word)
    assert lam.parts == parts
    assert lam.bound == Word(word).failures()


@given(words)
def test_inversions_match_pairwise_definition(w):
    assert inversions(w) == pair_inversions(w)


@given(words)
def test_partition_roundtrip_from_word(w):
    lam = word_to_partition(w)
    assert apply_qlambda(lam, len(w), w.successes()) == w


def test_weight_equals_inversions_exhaustive_to_12():
    for n in range(13):
        for w in words_of_length(n):
            assert inversions(w) == word_to_partition(w).size()


def test_bijection_roundtrip_exhaustive_to_12():
    for n in range(13):
        for k in range(n + 1):
            for lam in enumerate_partitions(k, n - k):
                assert word_to_partition(apply_qlambda(lam, n, k)) == lam


def test_mahonian_count_to_12():
    for n in range(13):
        hist = Counter((w.successes(), inversions(w)) for w in words_of_length(n))
        for k in range(n + 1):
            for t in range(k * (n - k) + 2):
                assert hist[(k, t)] == partition_count(k, n - k, t), (n, k, t)


# -- expand_noncommutative ----------------------------------------------------


def test_expand_n0():
    pairs = expand_noncommutative(0)
    assert len(pairs) == 1
    lam, w = pairs[0]
    assert lam.parts == () and str(w) == ""


def test_expand_n5_distinct():
    got = [w for _, w in expand_noncommutative(5)]
    assert len(got) == 32 == len(set(got))


def test_expand_covers_all_words_to_12():
    for n in range(13):
        got = [w for _, w in expand_noncommutative(n)]
        assert len(got) == 2**n
        assert set(got) == {Word("".join(p)) for p in product("FS", repeat=n)}


def test_expand_cap():
    with pytest.raises(CapExceededError):
        expand_noncommutative(21)
    with pytest.raises(CapExceededError):
        expand_noncommutative(6, cap=5)


def test_words_of_length_binary_order():
    assert [str(w) for w in words_of_length(2)] == ["FF", "FS", "SF", "SS"]
    assert list(words_of_length(0)) == [Word("")]
