"""Benchmark the split-scan kernel: numba @njit vs the numpy fallback.

Both implementations are imported directly so one process can time them
side by side regardless of the GRADECAST_NO_NUMBA setting. The jitted
kernel is called once before timing so compilation cost stays out of the
numbers. Columns mirror survey data: heavy duplication from a small
response scale, plus a continuous column as a contrast case.

Run: python3 benchmarks/bench_split.py
"""

import time

import numpy as np

from gradecast._kernels import scan_feature_numpy, _make_numba_kernel

REPEATS = 200
MIN_SPLIT = 4


def workloads(rng):
    for n in (100, 1_000, 10_000, 100_000):
        survey = rng.integers(1, 6, size=n).astype(np.float64)
        continuous = rng.uniform(0.0, 5.0, size=n)
        targets = rng.normal(5.0, 1.5, size=n)
        yield f"survey scale  n={n:>6}", survey, targets
        yield f"continuous    n={n:>6}", continuous, targets


def best_of(fn, values, targets, sd_parent, repeats=REPEATS):
    elapsed = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(values, targets, MIN_SPLIT, sd_parent)
        elapsed.append(time.perf_counter() - start)
    return min(elapsed), result


def main():
    rng = np.random.default_rng(7)
    jitted = _make_numba_kernel()
    warm = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0])
    jitted(warm, warm, 2, 1.0)  # trigger compilation outside the timings

    print(f"{'case':<22} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for label, values, targets in workloads(rng):
        sd_parent = float(np.std(targets))
        t_np, r_np = best_of(scan_feature_numpy, values, targets, sd_parent)
        t_nb, r_nb = best_of(jitted, values, targets, sd_parent)
        assert r_np == r_nb, f"paths disagree on {label}: {r_np} vs {r_nb}"
        print(f"{label:<22} {t_np * 1e6:>10.1f}us {t_nb * 1e6:>10.1f}us "
              f"{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
