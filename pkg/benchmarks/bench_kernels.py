#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy reference backend.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from mzlab._kernels import reference

try:
    from mzlab._kernels import _fast as fast
except ImportError:
    fast = None


def _time(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    rows = []

    for n, pts in [(8, 100_000), (32, 100_000), (128, 20_000)]:
        c = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
        x = rng.uniform(0, 2 * np.pi, pts)
        rows.append((f"trig_eval n={n}, {pts} pts",
                     _time(reference.trig_eval, c, x, repeat=args.repeat),
                     _time(fast.trig_eval, c, x, repeat=args.repeat)
                     if fast else None))

    for m, pts in [(9, 200_000), (65, 50_000)]:
        c = rng.standard_normal(m)
        t = rng.uniform(-1, 1, pts)
        rows.append((f"cheb_eval deg={m - 1}, {pts} pts",
                     _time(reference.cheb_eval, c, t, repeat=args.repeat),
                     _time(fast.cheb_eval, c, t, repeat=args.repeat)
                     if fast else None))

    for n, wins in [(16, 2048), (32, 2048)]:
        c = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
        centers = rng.uniform(0, 2 * np.pi, wins)
        halfw = np.full(wins, 0.2 / n)
        rows.append((f"window_extrema n={n}, {wins} windows",
                     _time(reference.trig_window_extrema, c, centers, halfw,
                           64, 40, repeat=args.repeat),
                     _time(fast.trig_window_extrema, c, centers, halfw,
                           64, 40, repeat=args.repeat) if fast else None))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'reference':>10}  {'compiled':>10}  speedup")
    for name, ref, fst in rows:
        if fst is None:
            print(f"{name:<{width}}  {ref * 1e3:>8.2f}ms  {'n/a':>10}")
        else:
            print(f"{name:<{width}}  {ref * 1e3:>8.2f}ms  {fst * 1e3:>8.2f}ms"
                  f"  {ref / fst:>6.1f}x")
    if fast is None:
        print("\ncompiled backend not built; install with a C compiler to "
              "compare")


if __name__ == "__main__":
    main()
