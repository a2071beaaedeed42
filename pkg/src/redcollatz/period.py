"""Period structure of reduced dynamics.

If d_r(x) = w with |w| = L, then d_r(x + k*2^L) = w for every k >= 1.
This module checks that claim directly, together with the primed-word
identities behind it, and offers a search for the smallest period that
does not presuppose the answer.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from . import kernels
from ._parallel import map_chunks, split_range
from .dynamics import DEFAULT_DR_CAP, apply_word, collatz_step, reduced_dynamics
from .errors import BoundsError, ContractError, InternalConsistencyError, MismatchError
from .word import Word

__all__ = [
    "PrimedValue", "PeriodReport", "SweepReport",
    "period_of", "apply_primed", "verify_separation", "verify_period",
    "minimal_period_bruteforce", "primed_parity_ok", "primed_bounds_ok",
    "sweep_period", "word_bits",
]

DEFAULT_K_MAX = 3
# exhaustive-scan budgets per backend
SCAN_LIMITS = {"cython": 1 << 24, "python": 1 << 16}


@dataclass(frozen=True)
class PrimedValue:
    """Exact value ``numerator / 2**denom_exp`` (not reduced)."""

    numerator: int
    denom_exp: int

    @property
    def is_integer(self):
        return self.numerator % (1 << self.denom_exp) == 0

    @property
    def is_even_integer(self):
        return self.numerator % (1 << (self.denom_exp + 1)) == 0

    def as_fraction(self):
        return Fraction(self.numerator, 1 << self.denom_exp)

    def __int__(self):
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.numerator >> self.denom_exp

    def _cmp_value(self, other):
        if isinstance(other, PrimedValue):
            return other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return other
        return NotImplemented

    def __eq__(self, other):
        v = self._cmp_value(other)
        if v is NotImplemented:
            return v
        return self.as_fraction() == v

    def __hash__(self):
        return hash(self.as_fraction())

    def __lt__(self, other):
        v = self._cmp_value(other)
        return v if v is NotImplemented else self.as_fraction() < v

    def __gt__(self, other):
        v = self._cmp_value(other)
        return v if v is NotImplemented else self.as_fraction() > v

    def __str__(self):
        if self.is_integer:
            return str(int(self))
        return f"{self.numerator}/2^{self.denom_exp}"


@dataclass(frozen=True)
class PeriodReport:
    x: int
    word: Word
    period: int
    checked_ks: int
    all_equal: bool

    def to_dict(self):
        return {
            "x": str(self.x),
            "word": self.word.seq,
            "period": str(self.period),
            "checked_ks": self.checked_ks,
            "all_equal": self.all_equal,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def _word(w):
    return w if isinstance(w, Word) else Word.parse(w)


def word_bits(w) -> int:
    """Parity bits of *w*: bit j is set iff symbol j is ``I``."""
    return int(_word(w).seq[::-1].replace("I", "1").replace("O", "0") or "0", 2)


def period_of(w) -> int:
    w = _word(w)
    if len(w) == 0:
        raise BoundsError("empty word has no period")
    return 1 << len(w)


def apply_primed(w, p: int) -> PrimedValue:
    """Apply *w* with every I read as x -> 3x/2: 3^cnt_i(w) * p / 2^|w|."""
    w = _word(w)
    return PrimedValue(3 ** w.cnt_i * p, len(w))


def primed_parity_ok(w, p: int) -> bool:
    """True iff the primed prefix values of *p* are even integers for j = 0..|w|-1."""
    w = _word(w)
    num = p
    for j in range(len(w)):
        if num % (1 << (j + 1)):
            return False
        if w.seq[j] == "I":
            num *= 3
    return True


def primed_bounds_ok(w, p: int) -> bool:
    """s'(P) < P and every proper primed prefix of P exceeds P."""
    w = _word(w)
    if not apply_primed(w, p) < p:
        return False
    return all(apply_primed(w.seq[:j], p) > p for j in range(1, len(w)))


def verify_separation(x: int, w, p: int) -> bool:
    """Check that the orbit of x+p splits as orbit(x) + primed(p) along *w*.

    For each j the parity after j steps must agree between x and x+p, and
    the value after j+1 steps at x+p must equal the value at x plus the
    primed prefix value of p.
    """
    w = _word(w)
    try:
        apply_word(w, x)
    except MismatchError as exc:
        raise ContractError(f"{w} does not apply to {x}: {exc}") from exc
    if p % 2:
        raise ContractError(f"shift {p} is odd")
    num = p
    for j in range(len(w)):
        if num % (1 << (j + 1)):
            raise ContractError(f"primed prefix {w.seq[:j] or 'empty'} of {p} is not an even integer")
        if w.seq[j] == "I":
            num *= 3
    a, b = x, x + p
    num = p
    for j, ch in enumerate(w.seq):
        if (a & 1) != (b & 1):
            return False
        a, _ = collatz_step(a)
        b, _ = collatz_step(b)
        if ch == "I":
            num *= 3
        if b * (1 << (j + 1)) != a * (1 << (j + 1)) + num:
            return False
    return True


def verify_period(x: int, k_max: int = DEFAULT_K_MAX, step_cap: int = DEFAULT_DR_CAP) -> PeriodReport:
    w = reduced_dynamics(x, step_cap).word
    period = 1 << len(w)
    ok = all(reduced_dynamics(x + k * period, step_cap).word == w for k in range(1, k_max + 1))
    return PeriodReport(x, w, period, k_max, ok)


def _prefix_parities(y, k):
    bits = 0
    for j in range(k):
        if y & 1:
            bits |= 1 << j
            y = (3 * y + 1) >> 1
        else:
            y >>= 1
    return bits


def _matching_residues(w):
    # Residues r mod 2^|w| whose first |w| parities spell w.  Both lifts
    # are tested at every level; the first j+1 parities of y depend only on
    # y mod 2^(j+1), which the test suite checks exhaustively for small j.
    bits = word_bits(w)
    level = [0]
    for j in range(len(w)):
        want = bits & ((1 << (j + 1)) - 1)
        nxt = []
        for r in level:
            for cand in (r, r + (1 << j)):
                rep = cand + (1 << (j + 1))
                if _prefix_parities(rep, j + 1) == want:
                    nxt.append(cand)
        level = nxt
    return level


def minimal_period_bruteforce(x: int, step_cap: int = DEFAULT_DR_CAP,
                              scan_limit=None, backend=None) -> int:
    """Smallest P >= 1 with d_r(x + P) = d_r(x), searched up to 2^|d_r(x)|.

    When 2^L <= *scan_limit* (default: per-backend budget) every P = 1, 2, ... is tried in turn.  Above
    that, candidates are restricted to shifts whose first L parities agree
    with d_r(x) (found by lifting residues bit by bit, trying both lifts),
    and those candidates are tested in increasing order with a full d_r
    computation.
    """
    kern = kernels.backend(backend)
    if scan_limit is None:
        scan_limit = SCAN_LIMITS[kern.name]
    w = reduced_dynamics(x, step_cap).word
    length = len(w)
    bits = word_bits(w)
    bound = 1 << length
    if bound <= scan_limit:
        p = kern.period_scan(x, length, bits, bound)
        if p == 0:
            raise InternalConsistencyError(f"no period of {x} up to 2^{length}")
        return p

    for p in sorted((r - x) % bound or bound for r in _matching_residues(w)):
        if reduced_dynamics(x + p, step_cap).word == w:
            return p
    raise InternalConsistencyError(f"no period of {x} up to 2^{length}")


@dataclass
class SweepReport:
    lo: int
    hi: int
    k_max: int
    checked: int = 0
    violations: List[Tuple[int, int]] = field(default_factory=list)
    capped: List[int] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations and not self.capped

    def to_dict(self):
        return {
            "lo": str(self.lo), "hi": str(self.hi), "k_max": self.k_max,
            "checked": self.checked,
            "violations": [{"x": str(x), "k": k} for x, k in self.violations],
            "capped": [str(x) for x in self.capped],
        }


def _sweep_chunk(args):
    lo, hi, k_max, step_cap, backend = args
    v, c = kernels.backend(backend).period_sweep(lo, hi, k_max, step_cap)
    return lo, hi, v, c


def sweep_period(lo: int, hi: int, k_max: int = DEFAULT_K_MAX, step_cap: int = DEFAULT_DR_CAP,
                 jobs: int = 1, chunk_size: int = 1 << 16, backend=None) -> SweepReport:
    """Check d_r(x + k*2^|d_r(x)|) = d_r(x) for x in [lo, hi], k = 1..k_max."""
    if lo < 2 or lo > hi:
        raise ValueError("need 2 <= lo <= hi")
    name = kernels.backend(backend).name
    tasks = [(a, b, k_max, step_cap, name) for a, b in split_range(lo, hi, chunk_size)]
    report = SweepReport(lo, hi, k_max)
    for a, b, v, c in map_chunks(_sweep_chunk, tasks, jobs):
        report.checked += b - a + 1
        report.violations.extend(v)
        report.capped.extend(c)
    return report
