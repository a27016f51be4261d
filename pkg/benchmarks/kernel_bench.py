"""Timing comparison of the two tuple-tally kernels.

The compiled extension and the pure-Python fallback expose the same
count_types surface; this script runs both on a grid of (degree, length)
cases and prints a table with the speedup. The tallies are asserted equal
case by case, so the run doubles as an equivalence check.

Usage: python3 benchmarks/kernel_bench.py [max_degree] [max_length]
"""

import sys
import time

from elsvkit.hurwitz import _purecount
from elsvkit.hurwitz.frobenius import partitions

try:
    from elsvkit.hurwitz import _fastcount
except ImportError:
    _fastcount = None


def time_kernel(kernel, d, b, monotone, reps=3):
    parts = list(partitions(d))
    sigma = tuple(range(d))
    best = None
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = kernel.count_types(d, b, sigma, monotone, parts)
        took = time.perf_counter() - t0
        best = took if best is None else min(best, took)
    return best, out


def main() -> int:
    d_max = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    b_max = int(sys.argv[2]) if len(sys.argv) > 2 else 6
    if _fastcount is None:
        print("compiled kernel not built; showing pure timings only")
    print(f"{'case':>18} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for d in range(3, d_max + 1):
        for b in (b_max - 1, b_max):
            for monotone in (False, True):
                tag = f"d={d} b={b}" + (" mono" if monotone else "")
                t_pure, out_pure = time_kernel(_purecount, d, b, monotone)
                if _fastcount is None:
                    print(f"{tag:>18} {t_pure:>9.4f}s {'-':>10} {'-':>8}")
                    continue
                t_fast, out_fast = time_kernel(_fastcount, d, b, monotone)
                assert tuple(out_pure[0]) == tuple(out_fast[0]), tag
                assert tuple(out_pure[1]) == tuple(out_fast[1]), tag
                print(f"{tag:>18} {t_pure:>9.4f}s {t_fast:>9.4f}s "
                      f"{t_pure / t_fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
