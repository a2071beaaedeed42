"""Transforms, words over {I, O} and exact validity tests for reduced words.

``I`` is x -> (3x+1)/2 (applied to odd x), ``O`` is x -> x/2 (applied to
even x).  A :class:`Word` is an immutable sequence of them, written as an
ASCII string such as ``"IIOO"``.

Every test that would naturally be phrased with log2(3) is done with exact
integer powers instead.
"""
from __future__ import annotations

import enum
from typing import Iterable, Union

from .errors import BoundsError, DegenerateComparisonError, WordParseError

__all__ = [
    "Transform", "Word", "PowerOrdering", "EMPTY",
    "cnt_i", "cnt_o", "substr", "cmp_pow3_pow2",
    "is_reduced_form", "is_extendable_prefix",
]


class Transform(str, enum.Enum):
    I = "I"
    O = "O"

    def __str__(self):
        return self.value


class PowerOrdering(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"


_ALLOWED = frozenset("IO")


class Word:
    """Immutable word over {I, O} with cached symbol counts.

    Equality and hashing use the symbol sequence only.
    """

    __slots__ = ("_seq", "_cnt_i")

    def __init__(self, seq: Union[str, "Word", Iterable[Transform]] = ""):
        if isinstance(seq, Word):
            text = seq._seq
        elif isinstance(seq, str):
            text = seq
        else:
            text = "".join(Transform(t).value for t in seq)
        if not _ALLOWED.issuperset(text):
            bad = next(i for i, ch in enumerate(text) if ch not in _ALLOWED)
            raise WordParseError(f"invalid symbol {text[bad]!r} at offset {bad} in word")
        self._seq = text
        self._cnt_i = text.count("I")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse the canonical text form; only the bytes 'I' and 'O' are accepted."""
        if not isinstance(text, str):
            raise WordParseError(f"expected str, got {type(text).__name__}")
        return cls(text)

    @property
    def seq(self) -> str:
        return self._seq

    @property
    def cnt_i(self) -> int:
        return self._cnt_i

    @property
    def cnt_o(self) -> int:
        return len(self._seq) - self._cnt_i

    def __len__(self):
        return len(self._seq)

    def __iter__(self):
        return (Transform(ch) for ch in self._seq)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self._seq[index])
        return Transform(self._seq[index])

    def __add__(self, other):
        if isinstance(other, (Word, Transform)):
            return Word(self._seq + str(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Word):
            return self._seq == other._seq
        return NotImplemented

    def __hash__(self):
        return hash(("Word", self._seq))

    def __lt__(self, other):
        # length first, then I < O
        if not isinstance(other, Word):
            return NotImplemented
        return (len(self._seq), self._seq) < (len(other._seq), other._seq)

    def __str__(self):
        return self._seq

    def __repr__(self):
        return f"Word({self._seq!r})"

    def prefixes(self, proper: bool = True):
        """Yield prefixes of length 1..|w|-1 (or 1..|w| if not *proper*)."""
        stop = len(self._seq) if proper else len(self._seq) + 1
        for j in range(1, stop):
            yield Word(self._seq[:j])


EMPTY = Word("")


def _as_word(w) -> Word:
    return w if isinstance(w, Word) else Word.parse(w)


def cnt_i(w) -> int:
    return _as_word(w).cnt_i


def cnt_o(w) -> int:
    return _as_word(w).cnt_o


def substr(w, i: int, j: int) -> Word:
    """Segment of *w* starting at 1-based position *i* with length *j*."""
    w = _as_word(w)
    if i < 1 or i > max(len(w), 1) or j < 0 or j > len(w) - (i - 1):
        raise BoundsError(f"substr({w}, {i}, {j}) out of range for length {len(w)}")
    return Word(w.seq[i - 1:i - 1 + j])


def cmp_pow3_pow2(a: int, b: int) -> PowerOrdering:
    """Exact ordering of 3**a against 2**b."""
    if a < 0 or b < 0:
        raise BoundsError("exponents must be non-negative")
    if a == 0 and b == 0:
        raise DegenerateComparisonError("3^0 == 2^0")
    # bit lengths settle most cases without building 3**a
    lo_bits = (a * 1584962) // 1000000  # floor(a*log2 3) - small slack
    if lo_bits > b + 1:
        return PowerOrdering.GREATER
    p3 = 3 ** a
    if p3 < (1 << b):
        return PowerOrdering.LESS
    return PowerOrdering.GREATER


def is_extendable_prefix(w) -> bool:
    """True iff 3^cnt_i(w) > 2^|w|, i.e. *w* may be a proper prefix of a reduced word."""
    w = _as_word(w)
    if len(w) == 0:
        raise BoundsError("empty word")
    return 3 ** w.cnt_i > (1 << len(w))


def is_reduced_form(w) -> bool:
    """Membership test for the set of reduced-dynamics words.

    ``O`` qualifies; otherwise every proper prefix p must satisfy
    3^cnt_i(p) > 2^|p| and the whole word must satisfy
    2^(|w|-1) < 3^cnt_i(w) < 2^|w|.
    """
    w = _as_word(w)
    n = len(w)
    if n == 0:
        raise BoundsError("empty word")
    if w.seq == "O":
        return True
    p3, p2 = 1, 1
    for j, ch in enumerate(w.seq, start=1):
        if ch == "I":
            p3 *= 3
        p2 <<= 1
        if j < n and not p3 > p2:
            return False
    return p3 < p2 and (p2 >> 1) < p3
