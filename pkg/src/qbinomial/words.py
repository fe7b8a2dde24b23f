"""Success/failure words and the transposition operator on them.

A word is one outcome of ``n`` Bernoulli trials, written over ``F``
(failure, the noncommuting ``x``) and ``S`` (success, ``y``).  Positions in
transpositions are 1-based, as in cycle notation.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .errors import CapExceededError
from .partitions import BoundedPartition, enumerate_partitions

__all__ = [
    "DEFAULT_EXPANSION_CAP",
    "FAILURE",
    "SUCCESS",
    "Transposition",
    "Word",
    "apply_qlambda",
    "expand_noncommutative",
    "inversions",
    "qlambda_transpositions",
    "word_to_partition",
    "words_of_length",
]

FAILURE = "F"
SUCCESS = "S"
DEFAULT_EXPANSION_CAP = 20

_XY = str.maketrans({FAILURE: "x", SUCCESS: "y"})
_BITS = str.maketrans({"0": FAILURE, "1": SUCCESS})


@dataclass(frozen=True, order=True)
class Word:
    """An immutable string over ``{F, S}``."""

    symbols: str

    def __post_init__(self) -> None:
        bad = set(self.symbols) - {FAILURE, SUCCESS}
        if bad:
            raise ValueError(
                f"word {self.symbols!r} contains symbols other than F/S: {sorted(bad)}"
            )

    @classmethod
    def parse(cls, text: str) -> Word:
        """Parse a word, ignoring surrounding whitespace."""
        return cls(text.strip())

    @classmethod
    def canonical(cls, n: int, k: int) -> Word:
        """The word ``F**(n-k) S**k`` that the operator acts on."""
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
        return cls(FAILURE * (n - k) + SUCCESS * k)

    def successes(self) -> int:
        return self.symbols.count(SUCCESS)

    def failures(self) -> int:
        return self.symbols.count(FAILURE)

    def as_monomial(self) -> str:
        """Display alias in ``x``/``y`` notation, e.g. ``FSSF`` -> ``xyyx``."""
        return self.symbols.translate(_XY)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __getitem__(self, index: int) -> str:
        return self.symbols[index]

    def __str__(self) -> str:
        return self.symbols


@dataclass(frozen=True)
class Transposition:
    """The cycle ``(i, j)`` swapping 1-based positions ``i`` and ``j``."""

    i: int
    j: int

    def apply(self, word: Word) -> Word:
        n = len(word)
        if not (1 <= self.i <= n and 1 <= self.j <= n):
            raise ValueError(f"{self} out of range for a word of length {n}")
        if self.i == self.j:
            return word
        s = list(word.symbols)
        a, b = self.i - 1, self.j - 1
        s[a], s[b] = s[b], s[a]
        return Word("".join(s))

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


def _parts(lam: BoundedPartition | Sequence[int]) -> tuple[int, ...]:
    return lam.parts if isinstance(lam, BoundedPartition) else tuple(lam)


def qlambda_transpositions(
    lam: BoundedPartition | Sequence[int], n: int, k: int
) -> list[Transposition]:
    """Transpositions ``(n-k+j, n-k+j-lam_j)`` for ``j = 1..k``, in application order."""
    parts = _parts(lam)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if len(parts) != k:
        raise ValueError(f"partition {parts} must have exactly k={k} parts")
    # Validates ordering and the bound n-k.
    BoundedPartition(parts, n - k)
    m = n - k
    return [Transposition(m + j, m + j - p) for j, p in enumerate(parts, start=1)]


def apply_qlambda(lam: BoundedPartition | Sequence[int], n: int, k: int) -> Word:
    """Apply the operator indexed by ``lam`` to ``F**(n-k) S**k``.

    The ``j = 1`` transposition is applied first.

    >>> str(apply_qlambda((3, 1, 0), 8, 3))
    'FFSFFSFS'
    """
    word = Word.canonical(n, k)
    for tr in qlambda_transpositions(lam, n, k):
        word = tr.apply(word)
    return word


def inversions(word: Word | str) -> int:
    """Number of pairs where an ``S`` precedes an ``F``.

    Equivalently, the sum over successes of the failures that follow each.
    """
    symbols = word.symbols if isinstance(word, Word) else Word(word).symbols
    seen = total = 0
    for c in symbols:
        if c == SUCCESS:
            seen += 1
        else:
            total += seen
    return total


def word_to_partition(word: Word | str) -> BoundedPartition:
    """Inverse of :func:`apply_qlambda`.

    Part ``j`` is the number of failures after the ``j``-th success, counting
    successes from the left.  The result lies in ``P(k, n-k)``.
    """
    if not isinstance(word, Word):
        word = Word(word)
    remaining = word.failures()
    parts = []
    for c in word.symbols:
        if c == SUCCESS:
            parts.append(remaining)
        else:
            remaining -= 1
    return BoundedPartition(tuple(parts), word.failures())


def expand_noncommutative(
    n: int, *, cap: int = DEFAULT_EXPANSION_CAP
) -> list[tuple[BoundedPartition, Word]]:
    """Every ``(lam, apply_qlambda(lam, n, k))`` for ``k = 0..n`` and ``lam`` in ``P(k, n-k)``.

    Expanding ``(x + y)**n`` without commuting the factors produces each of
    the ``2**n`` words once; the words emitted here are exactly those.
    Within each ``k`` the partitions are graded by size, larger parts first
    among partitions of equal size.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the expansion cap of {cap}")
    out = []
    for k in range(n + 1):
        # stable sort keeps the descending-lex order inside each size
        for lam in sorted(enumerate_partitions(k, n - k), key=BoundedPartition.size):
            out.append((lam, apply_qlambda(lam, n, k)))
    return out


def words_of_length(n: int) -> Iterable[Word]:
    """All ``2**n`` words in binary order, ``F`` as 0 and ``S`` as 1."""
    for i in range(1 << n):
        yield Word(format(i, f"0{n}b").translate(_BITS) if n else "")

