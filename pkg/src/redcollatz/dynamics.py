"""Shortcut Collatz map on arbitrary-precision integers.

Runs of equal transforms are applied in one go: a run of k ``O`` steps is a
right shift by k, and a run of k ``I`` steps on y = m*2^t - 1 (t >= k) gives
3^k * m * 2^(t-k) - 1.  Both are exact and make orbits of numbers with
hundreds of thousands of bits practical.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import DomainError, MismatchError, StepCapExceeded
from .word import Transform, Word

__all__ = [
    "OrbitRecord", "StoppingInfo", "DEFAULT_DR_CAP", "DEFAULT_ORBIT_CAP",
    "collatz_step", "is_matched", "apply_word", "reduced_dynamics",
    "original_dynamics", "orbit_counts",
]

DEFAULT_DR_CAP = 10**7
DEFAULT_ORBIT_CAP = 10**8

_RUNS = re.compile(r"I+|O+")
_POW3 = [3**k for k in range(64)]


def _pow3(k):
    return _POW3[k] if k < 64 else 3**k


def _trailing_zeros(y):
    return (y & -y).bit_length() - 1


@dataclass(frozen=True)
class OrbitRecord:
    start: int
    word: Word
    final: int
    trace: Optional[Tuple[int, ...]] = None

    @property
    def stopping_time(self):
        return len(self.word)

    @property
    def cnt_3x1(self):
        return self.word.cnt_i

    @property
    def cnt_half_total(self):
        return len(self.word)

    def to_dict(self):
        return {
            "start": str(self.start),
            "word": self.word.seq,
            "final": str(self.final),
            "stopping_time": self.stopping_time,
            "cnt_3x1": self.cnt_3x1,
            "cnt_half_total": self.cnt_half_total,
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        rec = cls(int(data["start"]), Word.parse(data["word"]), int(data["final"]))
        for key in ("stopping_time", "cnt_3x1", "cnt_half_total"):
            if key in data and int(data[key]) != getattr(rec, key):
                raise ValueError(f"inconsistent {key} in orbit record")
        return rec


@dataclass(frozen=True)
class StoppingInfo:
    stopping_time: int
    cnt_3x1: int
    cnt_half_total: int


def _check_positive(x, least=1):
    if not isinstance(x, int) or isinstance(x, bool):
        raise TypeError(f"expected int, got {type(x).__name__}")
    if x < least:
        raise DomainError(f"{x} is outside the domain (need >= {least})")


def collatz_step(x: int) -> Tuple[int, Transform]:
    _check_positive(x)
    if x & 1:
        return (3 * x + 1) >> 1, Transform.I
    return x >> 1, Transform.O


def is_matched(x: int, t) -> bool:
    _check_positive(x)
    return bool(x & 1) == (Transform(t) is Transform.I)


def apply_word(w, x: int, keep_trace: bool = False) -> OrbitRecord:
    """Apply *w* left to right to *x*, insisting on parity at every step.

    Raises :class:`MismatchError` with the 1-based step number and the
    value the offending transform was about to be applied to.
    """
    w = w if isinstance(w, Word) else Word.parse(w)
    _check_positive(x)
    if keep_trace:
        y = x
        trace = [y]
        for k, ch in enumerate(w.seq, start=1):
            odd = y & 1
            if odd != (ch == "I"):
                raise MismatchError(k, y, ch)
            y = (3 * y + 1) >> 1 if odd else y >> 1
            trace.append(y)
        return OrbitRecord(x, w, y, tuple(trace))

    y = x
    done = 0
    for run in _RUNS.finditer(w.seq):
        k = run.end() - run.start()
        if run.group()[0] == "I":
            t = _trailing_zeros(y + 1)
            if t < k:
                # after t steps the value is even
                bad = _pow3(t) * ((y + 1) >> t) - 1
                raise MismatchError(done + t + 1, bad, "I")
            y = _pow3(k) * ((y + 1) >> k) - 1
        else:
            z = _trailing_zeros(y) if y else k
            if z < k:
                raise MismatchError(done + z + 1, y >> z, "O")
            y >>= k
        done += k
    return OrbitRecord(x, w, y)


def _traced(x, cap, stop_below):
    y = x
    trace = [y]
    seq = []
    while len(seq) < cap:
        if y & 1:
            y = (3 * y + 1) >> 1
            seq.append("I")
        else:
            y >>= 1
            seq.append("O")
        trace.append(y)
        if (y < x) if stop_below else (y == 1):
            return OrbitRecord(x, Word("".join(seq)), y, tuple(trace))
    raise StepCapExceeded(x, cap)


def reduced_dynamics(x: int, step_cap: int = DEFAULT_DR_CAP, keep_trace: bool = False) -> OrbitRecord:
    """d_r(x): transforms from *x* up to the first value strictly below *x*."""
    _check_positive(x, 2)
    if step_cap < 1:
        raise ValueError("step_cap must be >= 1")
    if keep_trace:
        return _traced(x, step_cap, stop_below=True)
    xbits = x.bit_length()
    y = x
    n = 0
    parts = []
    while n < step_cap:
        if y & 1:
            t = _trailing_zeros(y + 1)
            k = min(t, step_cap - n)
            y = _pow3(k) * ((y + 1) >> k) - 1
            parts.append("I" * k)
            n += k
        else:
            z = _trailing_zeros(y)
            # smallest shift taking y below x
            i = max(1, y.bit_length() - xbits)
            if (y >> i) >= x:
                i += 1
            if i <= z and n + i <= step_cap:
                parts.append("O" * i)
                return OrbitRecord(x, Word("".join(parts)), y >> i)
            k = min(z, step_cap - n)
            y >>= k
            parts.append("O" * k)
            n += k
    raise StepCapExceeded(x, step_cap)


def orbit_counts(x: int, step_cap: int = DEFAULT_ORBIT_CAP) -> StoppingInfo:
    """Counts for the orbit of *x* down to 1 without building the word."""
    _check_positive(x)
    ci = n = 0
    y = x
    while y != 1:
        if n >= step_cap:
            raise StepCapExceeded(x, step_cap)
        if y & 1:
            k = min(_trailing_zeros(y + 1), step_cap - n)
            y = _pow3(k) * ((y + 1) >> k) - 1
            ci += k
        else:
            k = min(_trailing_zeros(y), step_cap - n)
            y >>= k
        n += k
    return StoppingInfo(n, ci, n)


def original_dynamics(x: int, step_cap: int = DEFAULT_ORBIT_CAP,
                      keep_trace: bool = False) -> Tuple[OrbitRecord, StoppingInfo]:
    """d(x): transforms from *x* to the first occurrence of 1."""
    _check_positive(x)
    if x == 1:
        return OrbitRecord(1, Word(""), 1, (1,) if keep_trace else None), StoppingInfo(0, 0, 0)
    if keep_trace:
        rec = _traced(x, step_cap, stop_below=False)
    else:
        y = x
        n = 0
        parts = []
        while y != 1:
            if n >= step_cap:
                raise StepCapExceeded(x, step_cap)
            if y & 1:
                k = min(_trailing_zeros(y + 1), step_cap - n)
                y = _pow3(k) * ((y + 1) >> k) - 1
                parts.append("I" * k)
            else:
                k = min(_trailing_zeros(y), step_cap - n)
                y >>= k
                parts.append("O" * k)
            n += k
        rec = OrbitRecord(x, Word("".join(parts)), 1)
    return rec, StoppingInfo(len(rec.word), rec.word.cnt_i, len(rec.word))
