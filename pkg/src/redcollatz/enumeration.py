"""Generate reduced-dynamics words and map them to residue classes.

Words are produced by a depth-first search that only extends prefixes with
3^cnt_i > 2^len; a prefix becomes a complete word the first time that
inequality flips.  The powers are carried along the search, one multiply
per node.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterator

from .dynamics import DEFAULT_DR_CAP, reduced_dynamics
from .errors import BoundsError, InternalConsistencyError
from .word import Word

__all__ = ["ResidueClass", "ClassEntry", "enumerate_words", "residue_of_word", "class_table",
           "CLASS_FIELDS", "class_table_csv"]

CLASS_FIELDS = ("word", "residue", "modulus_exp", "representative")


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The integers congruent to *residue* modulo 2**exponent."""

    residue: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 0 or not 0 <= self.residue < (1 << self.exponent):
            raise BoundsError(f"residue {self.residue} out of range for modulus 2^{self.exponent}")

    @property
    def modulus(self):
        return 1 << self.exponent

    def __contains__(self, x):
        return x % self.modulus == self.residue

    def representative(self, least=2):
        """Smallest member >= *least*."""
        r = self.residue
        if r >= least:
            return r
        m = self.modulus
        return r + ((least - r + m - 1) // m) * m

    def __str__(self):
        return f"[{self.residue}]_{self.modulus}"


@dataclass(frozen=True)
class ClassEntry:
    word: Word
    residue_class: ResidueClass
    representative: int

    def to_dict(self):
        return {
            "word": self.word.seq,
            "residue": str(self.residue_class.residue),
            "modulus_exp": self.residue_class.exponent,
            "representative": str(self.representative),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        w = Word.parse(data["word"])
        rc = ResidueClass(int(data["residue"]), int(data["modulus_exp"]))
        return cls(w, rc, int(data["representative"]))


def _words_of_length(n: int) -> Iterator[Word]:
    if n == 1:
        yield Word("O")
        return
    # stack of (prefix, 3^cnt_i, 2^len); every stacked prefix is extendable
    stack = [("I", 3, 2)]
    while stack:
        prefix, p3, p2 = stack.pop()
        depth = len(prefix)
        q2 = p2 << 1
        if depth == n - 1:
            if p3 < q2:
                yield Word(prefix + "O")
            continue
        # push O first so the I branch is explored first
        if p3 > q2:
            stack.append((prefix + "O", p3, q2))
        stack.append((prefix + "I", p3 * 3, q2))


def enumerate_words(max_len: int) -> Iterator[Word]:
    """All reduced-dynamics words of length <= *max_len*, by length then I < O."""
    if max_len < 1:
        raise BoundsError("max_len must be >= 1")
    for n in range(1, max_len + 1):
        yield from _words_of_length(n)


def residue_of_word(w) -> ResidueClass:
    """The class mod 2^|w| of starting values whose parities follow *w*.

    The residue is built one bit at a time.  With r fixed mod 2^j and v the
    value of r after j steps, r + 2^j reaches v + 3^cnt_i after j steps,
    which flips the parity, so exactly one of the two lifts fits step j.
    """
    w = w if isinstance(w, Word) else Word.parse(w)
    if len(w) == 0:
        raise BoundsError("empty word")
    r = 0
    v = 0  # value of r after j steps along w
    p3 = 1
    for j, ch in enumerate(w.seq):
        odd = ch == "I"
        if (v & 1) != odd:
            r += 1 << j
            v += p3
        if odd:
            v = (3 * v + 1) >> 1
            p3 *= 3
        else:
            v >>= 1
    return ResidueClass(r, len(w))


def class_table(max_len: int, step_cap: int = DEFAULT_DR_CAP, validate: bool = True) -> Iterator[ClassEntry]:
    """One entry per enumerated word, with its class and smallest member >= 2."""
    for w in enumerate_words(max_len):
        rc = residue_of_word(w)
        rep = rc.representative(2)
        if validate:
            got = reduced_dynamics(rep, step_cap).word
            if got != w:
                raise InternalConsistencyError(f"d_r({rep}) = {got}, expected {w}")
        yield ClassEntry(w, rc, rep)


def class_table_csv(entries) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CLASS_FIELDS, lineterminator="\n")
    writer.writeheader()
    for e in entries:
        writer.writerow(e.to_dict())
    return buf.getvalue()
