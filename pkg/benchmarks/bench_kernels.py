"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--max-k 9] [--max-n 20] [--repeat 3]

Prints one row per workload with the best-of-N time for each backend and
the speedup.  Both backends must return identical results; a mismatch aborts.
"""
import argparse
import random
import sys
import time

from grasshopper import _kernels_py

try:
    from grasshopper import _kernels
except ImportError:
    _kernels = None


def best(fn, repeat):
    out, t = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        t = min(t, time.perf_counter() - t0)
    return out, t


def workloads(max_k, max_n):
    p = (1 << 61) - 1
    for k in range(5, max_k + 1):
        mask = (1 << 2 * k) - 1
        yield (f"c_{k} mod 2^61-1",
               lambda k=k, mask=mask: _kernels_py.dense_alpha(k, mask, p),
               lambda k=k, mask=mask: _kernels.dense_alpha_mod(k, mask, p))
    rng = random.Random(0)
    for n in range(14, max_n + 1, 2):
        # blocked extremal-style instance: the DP has to fill the whole lattice
        jumps = list(range(-(n // 2) + 1, n // 2 + 2))
        jumps.remove(0)
        mines = list(range(1, n // 2 + 2))
        rng.shuffle(jumps)
        yield (f"subset DP n={n}",
               lambda j=jumps, m=mines: _kernels_py.subset_order(j, m),
               lambda j=jumps, m=mines: _kernels.subset_order(j, m))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--max-k", type=int, default=9)
    ap.add_argument("--max-n", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    print(f"{'workload':<20}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, py, cy in workloads(args.max_k, args.max_n):
        a, tp = best(py, 1)
        b, tc = best(cy, args.repeat)
        if a != b:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:<20}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
