#!/usr/bin/env python3
"""Benchmark the compiled integrator kernel against the pure-Python fallback.

Times raw endpoint shots of the flux system and a full eigenvalue solve with
each kernel, then prints the speedup. Run from the repository root:

    python3 benchmarks/benchmark_kernels.py
"""

import time

import numpy as np

import plrobin._integrate_py as pykern
from plrobin import Ball, RobinParams, SpaceForm, first_eigenvalue
from plrobin import shooting

try:
    import plrobin._integrate as cykern
except ImportError:
    cykern = None


def time_shots(kern, repeats: int = 200) -> float:
    """Seconds per endpoint shot of a representative ball configuration."""
    targets = np.array([1.0])
    v = np.empty(1)
    w = np.empty(1)
    start = time.perf_counter()
    for _ in range(repeats):
        kern.integrate_flux(kern.WARP_SINH, 0.0, 3, 3.0, 2.5, 1e-6, 1.0,
                            -2.5e-6 / 3, targets, 1e-11, 1e-13, 1.0 / 64, v, w)
    return (time.perf_counter() - start) / repeats


def time_solve(kern, repeats: int = 3) -> float:
    """Seconds per full eigenvalue solve with the given kernel."""
    saved = shooting._kern
    shooting._kern = kern
    try:
        sf = SpaceForm(-1, 3)
        params = RobinParams(3.0, 1.0)
        start = time.perf_counter()
        for _ in range(repeats):
            first_eigenvalue(sf, params, Ball(1.0))
        return (time.perf_counter() - start) / repeats
    finally:
        shooting._kern = saved


def main():
    rows = [("python", time_shots(pykern), time_solve(pykern))]
    if cykern is not None:
        rows.insert(0, ("cython", time_shots(cykern), time_solve(cykern)))
    else:
        print("compiled kernel not built; timing the fallback only")

    print(f"{'kernel':<8} {'per shot':>12} {'per solve':>12}")
    for name, shot, solve in rows:
        print(f"{name:<8} {shot * 1e3:>10.3f}ms {solve * 1e3:>10.1f}ms")
    if cykern is not None:
        print(f"\nspeedup: {rows[1][1] / rows[0][1]:.1f}x per shot, "
              f"{rows[1][2] / rows[0][2]:.1f}x per solve")


if __name__ == "__main__":
    main()
