"""Timing comparison of the compiled and pure kernels.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--repeat N] [--size N]

Workloads: the batched spectral-radius sweep over the complete C_8 catalog,
one dense Jacobi diagonalization, and the exhaustive C_6 structure scan.
Falls back to pure-only timings when the extension is not built.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from arithcycle import _kernels_py as pure
from arithcycle.enumeration import enumerate_cycle
from arithcycle.spectra import adjacency_matrix

try:
    from arithcycle import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def catalog_batch(n: int = 8) -> np.ndarray:
    cat = enumerate_cycle(n)
    base = -adjacency_matrix(cat.family)
    mats = np.broadcast_to(base, (len(cat), n, n)).copy()
    idx = np.arange(n)
    for i, d in enumerate(cat.d_vectors()):
        mats[i, idx, idx] = d
    return mats


def dense_matrix(size: int) -> np.ndarray:
    rng = np.random.default_rng(20260821)
    m = rng.integers(-9, 9, (size, size)).astype(np.float64)
    return (m + m.T) / 2.0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    parser.add_argument("--size", type=int, default=200, help="dense matrix size")
    args = parser.parse_args()

    mats = catalog_batch()
    dense = dense_matrix(args.size)
    workloads = [
        (f"jacobi_batch, C_8 catalog ({mats.shape[0]} matrices 8x8)",
         lambda impl: impl.jacobi_batch(mats, 1e-12, 60)),
        (f"jacobi, dense {args.size}x{args.size}",
         lambda impl: impl.jacobi(dense, 1e-12, 60, False)),
        ("cycle_scan, n=6 cap 10",
         lambda impl: impl.cycle_scan(6, 10)),
    ]

    if compiled is None:
        print("compiled extension not built; timing the pure backend only")
    header = f"{'workload':<46} {'compiled':>10} {'pure':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, call in workloads:
        t_pure = best_of(lambda: call(pure), args.repeat)
        if compiled is not None:
            t_comp = best_of(lambda: call(compiled), args.repeat)
            print(f"{label:<46} {t_comp:>9.4f}s {t_pure:>9.4f}s {t_pure / t_comp:>8.1f}x")
        else:
            print(f"{label:<46} {'-':>10} {t_pure:>9.4f}s {'-':>9}")


if __name__ == "__main__":
    main()
