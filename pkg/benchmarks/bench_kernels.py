#!/usr/bin/env python3
"""Time the hot loops on every available backend.

    python benchmarks/bench_kernels.py --hi 1000000 --repeat 3
"""
import argparse
import time

from redcollatz import kernels
from redcollatz.period import word_bits
from redcollatz.dynamics import reduced_dynamics


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def cases(hi):
    w = reduced_dynamics(27).word  # L = 59; scan a window, not 2^59
    return [
        (f"range_lengths [2, {hi}]", lambda k: k.range_lengths(2, hi, 10**7)),
        (f"range_signatures [2, {hi}]", lambda k: k.range_signatures(2, hi, 10**7)),
        (f"period_sweep [2, {hi // 10}] k=3", lambda k: k.period_sweep(2, hi // 10, 3, 10**7)),
        ("period_scan x=27, 2^20 shifts", lambda k: k.period_scan(27, len(w), word_bits(w), 1 << 20)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--hi", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = kernels.available()
    print(f"backends: {', '.join(names)} (default {kernels.BACKEND})")
    header = f"{'kernel':<36}" + "".join(f"{n:>12}" for n in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for label, fn in cases(args.hi):
        times = []
        results = []
        for n in names:
            t, r = best_of(lambda: fn(kernels.backend(n)), args.repeat)
            times.append(t)
            results.append(r)
        line = f"{label:<36}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(names) > 1:
            line += f"{times[0] / times[1]:>9.1f}x"
            same = all(_same(results[0], r) for r in results[1:])
            if not same:
                line += "  RESULTS DIFFER"
        print(line)


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if hasattr(a, "tolist"):
        return a.tolist() == b.tolist()
    return a == b


if __name__ == "__main__":
    main()
