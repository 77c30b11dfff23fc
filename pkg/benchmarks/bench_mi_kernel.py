#!/usr/bin/env python3
"""Benchmark the mutual-information inner kernel: compiled vs numpy.

The kernel dominates sweep runtime (one call per mutual-information
estimate, ~32x500x32 exp evaluations each), so this is the number that
decides how long a full secrecy-rate sweep takes.

Usage: python3 benchmarks/bench_mi_kernel.py [--repeats N]
"""

import argparse
import time

import numpy as np

from secsm._kernels import BACKEND, mi_inner_mean_numpy

try:
    from secsm._kernels._mi_cython import mi_inner_mean as mi_compiled
except ImportError:
    mi_compiled = None


def make_inputs(rng, entries, draws, spread):
    g = spread * (rng.standard_normal(entries)
                  + 1j * rng.standard_normal(entries))
    diffs = g[:, None] - g[None, :]
    noise = np.sqrt(0.5) * (rng.standard_normal((entries, draws))
                            + 1j * rng.standard_normal((entries, draws)))
    return diffs, noise


def time_call(fn, args, repeats):
    fn(*args)  # warm up
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"active backend: {BACKEND}")
    if mi_compiled is None:
        print("compiled kernel unavailable; timing the numpy path only")
    print(f"{'entries':>8} {'draws':>6} {'numpy ms':>10} "
          f"{'compiled ms':>12} {'speedup':>8} {'max rel diff':>13}")
    for entries, draws in ((8, 200), (32, 500), (32, 2000), (64, 500)):
        diffs, noise = make_inputs(rng, entries, draws, spread=2.0)
        t_np = time_call(mi_inner_mean_numpy, (diffs, noise), args.repeats)
        if mi_compiled is None:
            print(f"{entries:8d} {draws:6d} {t_np * 1e3:10.2f} "
                  f"{'-':>12} {'-':>8} {'-':>13}")
            continue
        t_cy = time_call(mi_compiled, (diffs, noise), args.repeats)
        a = mi_inner_mean_numpy(diffs, noise)
        b = mi_compiled(diffs, noise)
        rel = abs(a - b) / max(abs(a), 1e-300)
        print(f"{entries:8d} {draws:6d} {t_np * 1e3:10.2f} "
              f"{t_cy * 1e3:12.2f} {t_np / t_cy:8.2f} {rel:13.2e}")

    # representative sweep cost: one secrecy-rate estimate needs two
    # kernel calls (Bob and the attacker)
    diffs, noise = make_inputs(rng, 32, 500, spread=2.0)
    fn = mi_compiled if mi_compiled is not None else mi_inner_mean_numpy
    per = time_call(fn, (diffs, noise), args.repeats)
    print(f"\none (32 entries, 500 draws) call: {per * 1e3:.2f} ms; "
          f"a 500-realization, 3-SNR, 4-method sweep makes 7500 calls "
          f"(~{7500 * per:.0f}s single-core before parallelism)")


if __name__ == "__main__":
    main()
