"""Pure-Python hot loops.  Reference semantics for ``_ckernels``.

Conventions shared by both backends:

* a *signature* of d_r(x) is ``(length, bits)`` where bit j of ``bits`` is 1
  iff step j (0-based) is an I step;
* length ``-1`` means the step cap was hit;
* length ``-2`` (compiled backend only) means the machine-word fast path
  overflowed and the caller must recompute with Python integers.
"""
import numpy as np

CAP_EXCEEDED = -1
OVERFLOW = -2
MASK64 = (1 << 64) - 1


def dr_length(x, cap):
    y = x
    n = 0
    while n < cap:
        if y & 1:
            y = (3 * y + 1) >> 1
        else:
            y >>= 1
            if y < x:
                return n + 1
        n += 1
    return CAP_EXCEEDED


def dr_signature(x, cap):
    y = x
    n = 0
    bits = 0
    while n < cap:
        if y & 1:
            y = (3 * y + 1) >> 1
            bits |= 1 << n
        else:
            y >>= 1
            if y < x:
                return n + 1, bits
        n += 1
    return CAP_EXCEEDED, 0


def range_lengths(lo, hi, cap):
    out = np.empty(hi - lo + 1, dtype=np.int64)
    for i, x in enumerate(range(lo, hi + 1)):
        if not x & 1:
            out[i] = 1
            continue
        out[i] = dr_length(x, cap)
    return out


def range_signatures(lo, hi, cap):
    n = hi - lo + 1
    lengths = np.empty(n, dtype=np.int64)
    bits = np.empty(n, dtype=np.uint64)
    for i, x in enumerate(range(lo, hi + 1)):
        ln, b = dr_signature(x, cap)
        lengths[i] = ln
        bits[i] = b & MASK64
    return lengths, bits


def matches_signature(y, length, bits):
    """True iff d_r(y) has exactly the given signature; stops at first divergence."""
    v = y
    for j in range(length):
        odd = v & 1
        if odd != (bits >> j) & 1:
            return False
        if odd:
            v = (3 * v + 1) >> 1
        else:
            v >>= 1
            if v < y:
                return j == length - 1
    return False


def period_sweep(lo, hi, k_max, cap):
    """Return ``(violations, capped, deferred)`` over x in [lo, hi].

    A violation is ``(x, k)`` with d_r(x + k*2^L) != d_r(x), L = |d_r(x)|.
    ``deferred`` is always empty here; it exists for the compiled twin.
    """
    violations = []
    capped = []
    for x in range(lo, hi + 1):
        length, bits = dr_signature(x, cap)
        if length < 0:
            capped.append(x)
            continue
        step = 1 << length
        for k in range(1, k_max + 1):
            if not matches_signature(x + k * step, length, bits):
                violations.append((x, k))
    return violations, capped, []


def period_scan(x, length, bits, limit):
    """Smallest P in [1, limit] with signature(x + P) == (length, bits), else 0."""
    for p in range(1, limit + 1):
        if matches_signature(x + p, length, bits):
            return p
    return 0
