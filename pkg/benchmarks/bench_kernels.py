#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure numpy fallback.

Run after an in-place build:

    python benchmarks/bench_kernels.py

The two hot paths are the cyclic Jacobi eigensolver (dominates the
spectral acceptance criteria) and the batched small integer determinants
(dominate the exact zonotope engines and the polarization oracle).
"""

import time

import numpy as np

from mixedforms import _kernels
from mixedforms._kernels import _fallback

BACKENDS = [("python", _fallback)]
if _kernels.IMPLEMENTATION == "cython":
    from mixedforms._kernels import _core

    BACKENDS.append(("cython", _core))
else:
    print("compiled extension not available; benchmarking the fallback only\n")


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi():
    rng = np.random.default_rng(0)
    print(f"{'jacobi_eigh':<24}" + "".join(f"{name:>14}" for name, _ in BACKENDS))
    for n, reps in ((8, 200), (16, 100), (32, 40), (64, 10)):
        mats = []
        for _ in range(reps):
            g = rng.standard_normal((n, n))
            mats.append((g + g.T) / 2)
        row = f"  n={n:<4} x{reps:<12}"
        times = []
        for _, impl in BACKENDS:
            dt = timeit(lambda impl=impl: [impl.jacobi_eigh(m) for m in mats])
            times.append(dt)
            row += f"{dt * 1e3:>11.1f} ms"
        if len(times) == 2 and times[1] > 0:
            row += f"   ({times[0] / times[1]:.0f}x)"
        print(row)


def bench_dets():
    rng = np.random.default_rng(1)
    print(f"\n{'det_batch_int64':<24}" + "".join(f"{name:>14}" for name, _ in BACKENDS))
    for n, batch in ((2, 100_000), (3, 100_000), (4, 50_000)):
        mats = rng.integers(-9, 10, size=(batch, n, n)).astype(np.int64)
        row = f"  n={n} B={batch:<11}"
        times = []
        for _, impl in BACKENDS:
            dt = timeit(lambda impl=impl: impl.det_batch_int64(mats))
            times.append(dt)
            row += f"{dt * 1e3:>11.1f} ms"
        if len(times) == 2 and times[1] > 0:
            row += f"   ({times[0] / times[1]:.1f}x)"
        print(row)


if __name__ == "__main__":
    print(f"active implementation: {_kernels.IMPLEMENTATION}\n")
    bench_jacobi()
    bench_dets()
