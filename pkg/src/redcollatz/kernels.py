"""Backend selection for the hot loops.

The compiled ``_ckernels`` module is used when importable, unless the
environment variable ``REDCOLLATZ_PURE`` is set to a non-empty value.
Inputs outside the 64-bit range, and any result the compiled path flags as
overflowed, are recomputed with the pure-Python backend, so both backends
return identical values for every input.
"""
import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

U64_MAX = (1 << 64) - 1
OVERFLOW = _pykernels.OVERFLOW
CAP_EXCEEDED = _pykernels.CAP_EXCEEDED


class Kernels:
    """Hot-loop entry points bound to one implementation module."""

    def __init__(self, impl):
        self.impl = impl
        self.name = "cython" if impl is _ckernels else "python"
        self._compiled = impl is not _pykernels

    def __repr__(self):
        return f"<Kernels {self.name}>"

    def _fits(self, *values):
        return self._compiled and all(0 <= v <= U64_MAX for v in values)

    def dr_length(self, x, cap):
        if self._fits(x):
            n = self.impl.dr_length(x, cap)
            if n != OVERFLOW:
                return n
        return _pykernels.dr_length(x, cap)

    def dr_signature(self, x, cap):
        if self._fits(x):
            sig = self.impl.dr_signature(x, cap)
            if sig[0] != OVERFLOW:
                return sig
        return _pykernels.dr_signature(x, cap)

    def range_lengths(self, lo, hi, cap):
        if not self._fits(lo, hi):
            return _pykernels.range_lengths(lo, hi, cap)
        out = self.impl.range_lengths(lo, hi, cap)
        for i in np.flatnonzero(out == OVERFLOW):
            out[i] = _pykernels.dr_length(lo + int(i), cap)
        return out

    def range_signatures(self, lo, hi, cap):
        """Lengths and the first (up to 64) parity bits of d_r over [lo, hi]."""
        if not self._fits(lo, hi):
            return _pykernels.range_signatures(lo, hi, cap)
        lengths, bits = self.impl.range_signatures(lo, hi, cap)
        for i in np.flatnonzero(lengths == OVERFLOW):
            n, b = _pykernels.dr_signature(lo + int(i), cap)
            lengths[i] = n
            bits[i] = b & _pykernels.MASK64
        return lengths, bits

    def period_sweep(self, lo, hi, k_max, cap):
        """``(violations, capped)`` for the period check over [lo, hi]."""
        if not self._fits(lo, hi):
            violations, capped, _ = _pykernels.period_sweep(lo, hi, k_max, cap)
            return violations, capped
        violations, capped, deferred = self.impl.period_sweep(lo, hi, k_max, cap)
        for x in deferred:
            v, c, _ = _pykernels.period_sweep(x, x, k_max, cap)
            violations.extend(v)
            capped.extend(c)
        violations.sort()
        capped.sort()
        return violations, capped

    def period_scan(self, x, length, bits, limit):
        if length <= 64 and self._fits(x, x + limit):
            p = self.impl.period_scan(x, length, bits, limit)
            if p >= 0:
                return p
        return _pykernels.period_scan(x, length, bits, limit)


PYTHON = Kernels(_pykernels)
COMPILED = Kernels(_ckernels) if _ckernels is not None else None


def available():
    """Names of the importable backends."""
    return ["python"] + (["cython"] if COMPILED is not None else [])


def backend(name=None):
    """Return the backend called *name*, or the default one."""
    if name is None:
        return DEFAULT
    if name == "python":
        return PYTHON
    if name == "cython":
        if COMPILED is None:
            raise ImportError("compiled kernels are not built")
        return COMPILED
    raise ValueError(f"unknown backend {name!r}")


DEFAULT = PYTHON if (COMPILED is None or os.environ.get("REDCOLLATZ_PURE")) else COMPILED
BACKEND = DEFAULT.name
