#!/usr/bin/env python3
"""Benchmark the numba kernel against the pure-numpy fallback.

Both backends consume the same counter-based random stream, so besides
timing the script reports the largest deviation between the matrices they
produce (expected: rounding noise only).

Usage: python benchmarks/bench_sampling.py [--n 4] [--samples 200000]
"""

import argparse
import time

import numpy as np

from eqg.oracle import mc_bistochastic_average, mc_orthogonal_average
from eqg.sampling import HAS_NUMBA, available_backends, sample_orthogonal


def time_call(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4)
    parser.add_argument("--samples", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    if not HAS_NUMBA:
        print("numba is not installed; only the numpy backend is available")

    word = tuple((1, 1) for _ in range(4))
    rows = {}
    for backend in available_backends():
        sample_orthogonal(args.n, 16, args.seed, backend=backend)  # warm up / JIT
        t_sample, mats = time_call(
            lambda b=backend: sample_orthogonal(args.n, args.samples, args.seed, backend=b)
        )
        t_orth, rep_o = time_call(
            lambda b=backend: mc_orthogonal_average(args.n, word, args.samples, args.seed, backend=b)
        )
        t_bist, rep_b = time_call(
            lambda b=backend: mc_bistochastic_average(args.n, word, args.samples, args.seed, backend=b)
        )
        rows[backend] = (t_sample, t_orth, t_bist, mats, rep_o, rep_b)

    print(f"\nn={args.n}  samples={args.samples}  seed={args.seed}  (best of 3)\n")
    print(f"{'backend':<8} {'sample_orthogonal':>18} {'mc_orthogonal':>14} {'mc_bistochastic':>16}")
    for backend, (t_sample, t_orth, t_bist, *_rest) in rows.items():
        print(f"{backend:<8} {t_sample:>17.3f}s {t_orth:>13.3f}s {t_bist:>15.3f}s")

    if len(rows) == 2:
        numba_row, numpy_row = rows["numba"], rows["numpy"]
        print(f"\nspeedup (numpy/numba): sampling x{numpy_row[0] / numba_row[0]:.1f}, "
              f"orthogonal mean x{numpy_row[1] / numba_row[1]:.1f}, "
              f"bistochastic mean x{numpy_row[2] / numba_row[2]:.1f}")
        deviation = float(np.max(np.abs(numba_row[3] - numpy_row[3])))
        print(f"max |numba - numpy| over sampled matrices: {deviation:.3e}")
        print(f"mean difference (orthogonal): {abs(numba_row[4].mean - numpy_row[4].mean):.3e}")
        print(f"mean difference (bistochastic): {abs(numba_row[5].mean - numpy_row[5].mean):.3e}")


if __name__ == "__main__":
    main()
