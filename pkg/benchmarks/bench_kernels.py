#!/usr/bin/env python3
"""Benchmark the jitted path-sampling kernels against the pure-Python
fallbacks (the same fallbacks DERHAM_LFT_NO_NUMBA=1 selects).

Usage:
    python benchmarks/bench_kernels.py [--steps 1000000] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from derham_lft import _kernels, walk_system
from derham_lft.measure import _float_params, _uniforms


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    params = _float_params(walk_system(0.5))
    uniforms = _uniforms(args.seed, args.steps)
    digits = np.empty(args.steps, dtype=np.uint8)
    states = np.empty(args.steps, dtype=np.float64)

    rows = []
    for label, arrays_fn, sums_fn in (
        ("numba @njit", _kernels.path_arrays_jit, _kernels.path_sums_jit),
        ("pure python", _kernels.path_arrays_py, _kernels.path_sums_py),
    ):
        if arrays_fn is None:
            print(f"{label:>12}: unavailable (numba missing or DERHAM_LFT_NO_NUMBA set)")
            continue
        # Warm-up triggers compilation for the jitted variants.
        arrays_fn(*params, uniforms[:1000], digits[:1000], states[:1000])
        sums_fn(*params, uniforms[:1000])
        t_arrays = best_of(args.repeat, arrays_fn, *params, uniforms, digits, states)
        t_sums = best_of(args.repeat, sums_fn, *params, uniforms)
        rows.append((label, t_arrays, t_sums))

    print(f"\npath sampling, {args.steps:,} steps (best of {args.repeat}):")
    print(f"{'implementation':>15} {'arrays kernel':>15} {'sums kernel':>15}")
    for label, t_arrays, t_sums in rows:
        print(f"{label:>15} {t_arrays * 1e3:>12.2f} ms {t_sums * 1e3:>12.2f} ms")
    if len(rows) == 2:
        print(
            f"{'speedup':>15} {rows[1][1] / rows[0][1]:>13.1f}x {rows[1][2] / rows[0][2]:>13.1f}x"
        )


if __name__ == "__main__":
    main()
