#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Runs the two hot paths at representative sizes and prints a timing table:

    python3 benchmarks/bench_kernels.py
"""
import time

import numpy as np

from leja_lab import SetSpec, build_mesh, chebyshev_nodes
from leja_lab import _kernels_py
from leja_lab.lebesgue import node_log_weights

try:
    from leja_lab import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    segment = SetSpec("segment")
    cases = []

    for n, m in ((64, 32_768), (128, 131_072)):
        mesh = build_mesh(segment, m, "endpoint_clustered")
        xr = np.ascontiguousarray(mesh.points.real)
        xi = np.ascontiguousarray(mesh.points.imag)
        cases.append((
            f"greedy selection n={n}, mesh={m}",
            lambda impl, xr=xr, xi=xi, n=n: impl.leja_indices(xr, xi, n, 0),
        ))

    for n, m in ((64, 20_000), (128, 100_000)):
        row = chebyshev_nodes(n)
        logw = node_log_weights(row)
        mesh = build_mesh(segment, m, "endpoint_clustered")
        args = (
            np.ascontiguousarray(row.real), np.ascontiguousarray(row.imag), logw,
            np.ascontiguousarray(mesh.points.real),
            np.ascontiguousarray(mesh.points.imag),
        )
        cases.append((
            f"lebesgue sum n={n}, points={m}",
            lambda impl, args=args: impl.lebesgue_on_mesh(*args),
        ))

    header = f"{'case':38s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for label, fn in cases:
        t_py = best_of(lambda: fn(_kernels_py))
        if compiled is not None:
            t_c = best_of(lambda: fn(compiled))
            a = np.asarray(fn(_kernels_py), dtype=float)
            b = np.asarray(fn(compiled), dtype=float)
            assert np.allclose(a, b, rtol=1e-10, atol=1e-12), f"mismatch in {label}"
            print(f"{label:38s} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:7.2f}x")
        else:
            print(f"{label:38s} {t_py * 1e3:9.2f}ms {'n/a':>10s} {'n/a':>8s}")
    if compiled is None:
        print("\ncompiled extension not available; rebuild with Cython to compare")


if __name__ == "__main__":
    main()
