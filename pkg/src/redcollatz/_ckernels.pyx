# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops on 64-bit words.  Same contract as ``_pykernels``.

Any computation whose intermediate value would exceed 2**64 - 1 reports
OVERFLOW (-2) instead of a result; ``redcollatz.kernels`` redoes those with
Python integers.
"""
import numpy as np
from libc.stdint cimport uint64_t, int64_t

cdef enum:
    CAP_EXCEEDED = -1
    OVERFLOW = -2

# largest y for which (3y+1)/2 fits: 3y+1 <= 2**64 - 1
cdef uint64_t I_LIMIT = 6148914691236517204ULL


cdef inline int64_t _length(uint64_t x, int64_t cap) nogil:
    cdef uint64_t y = x
    cdef int64_t n = 0
    while n < cap:
        if y & 1:
            if y > I_LIMIT:
                return OVERFLOW
            y = (3 * y + 1) >> 1
        else:
            y >>= 1
            if y < x:
                return n + 1
        n += 1
    return CAP_EXCEEDED


cdef inline int64_t _signature(uint64_t x, int64_t cap, uint64_t *bits) nogil:
    cdef uint64_t y = x
    cdef int64_t n = 0
    cdef uint64_t b = 0
    while n < cap:
        if y & 1:
            if y > I_LIMIT:
                return OVERFLOW
            y = (3 * y + 1) >> 1
            if n < 64:
                b |= (<uint64_t>1) << n
        else:
            y >>= 1
            if y < x:
                bits[0] = b
                return n + 1
        n += 1
    return CAP_EXCEEDED


cdef inline int _matches(uint64_t y, int64_t length, uint64_t bits) nogil:
    # -1: overflow, 0: no, 1: yes.  Requires length <= 64.
    cdef uint64_t v = y
    cdef int64_t j
    cdef uint64_t odd
    for j in range(length):
        odd = v & 1
        if odd != ((bits >> j) & 1):
            return 0
        if odd:
            if v > I_LIMIT:
                return -1
            v = (3 * v + 1) >> 1
        else:
            v >>= 1
            if v < y:
                return 1 if j == length - 1 else 0
    return 0


def dr_length(uint64_t x, int64_t cap):
    return _length(x, cap)


def dr_signature(uint64_t x, int64_t cap):
    cdef uint64_t bits = 0
    cdef int64_t n = _signature(x, cap, &bits)
    if n > 64:
        return OVERFLOW, 0
    if n < 0:
        return n, 0
    return n, bits


def range_lengths(uint64_t lo, uint64_t hi, int64_t cap):
    cdef Py_ssize_t n = <Py_ssize_t>(hi - lo + 1)
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef Py_ssize_t i
    cdef uint64_t x
    with nogil:
        for i in range(n):
            x = lo + <uint64_t>i
            if x & 1:
                o[i] = _length(x, cap)
            else:
                o[i] = 1
    return out


def range_signatures(uint64_t lo, uint64_t hi, int64_t cap):
    cdef Py_ssize_t n = <Py_ssize_t>(hi - lo + 1)
    lengths = np.empty(n, dtype=np.int64)
    bits = np.empty(n, dtype=np.uint64)
    cdef int64_t[::1] lv = lengths
    cdef uint64_t[::1] bv = bits
    cdef Py_ssize_t i
    cdef uint64_t b
    with nogil:
        for i in range(n):
            b = 0
            lv[i] = _signature(lo + <uint64_t>i, cap, &b)
            bv[i] = b
    return lengths, bits


def period_sweep(uint64_t lo, uint64_t hi, int k_max, int64_t cap):
    """Returns ``(violations, capped, deferred)``; deferred x need Python ints."""
    violations = []
    capped = []
    deferred = []
    cdef uint64_t x, bits, step, y
    cdef int64_t length
    cdef int k, r
    x = lo
    while True:
        bits = 0
        length = _signature(x, cap, &bits)
        if length == CAP_EXCEEDED:
            capped.append(x)
        elif length == OVERFLOW or length > 56 or k_max > 64:
            deferred.append(x)
        else:
            step = (<uint64_t>1) << length
            if x > 0xFFFFFFFFFFFFFFFFULL - <uint64_t>k_max * step:
                deferred.append(x)
            else:
                y = x
                for k in range(1, k_max + 1):
                    y += step
                    r = _matches(y, length, bits)
                    if r < 0:
                        deferred.append(x)
                        break
                    if r == 0:
                        violations.append((x, k))
        if x == hi:
            break
        x += 1
    return violations, capped, deferred


def period_scan(uint64_t x, int64_t length, uint64_t bits, uint64_t limit):
    """Smallest P in [1, limit] matching the signature; 0 if none, -1 on overflow."""
    cdef uint64_t p
    cdef int r = 0
    if length > 64 or x > 0xFFFFFFFFFFFFFFFFULL - limit:
        return -1
    with nogil:
        p = 1
        while p <= limit:
            r = _matches(x + p, length, bits)
            if r != 0:
                break
            p += 1
    if p > limit:
        return 0
    if r < 0:
        return -1
    return p
