"""Timings for the hot kernels: compiled backend vs pure-numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

The numba functions are called once before timing so compilation is not
charged to the measurement.
"""

import time

import numpy as np

from areaflow import analytic, areafn, make_grid, sample
from areaflow.kernels import numpy_impl

try:
    from areaflow.kernels import numba_impl
except ImportError:
    numba_impl = None


def _time(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _row(label, t_np, t_nb):
    if t_nb is None:
        print(f"{label:<34} {t_np * 1e3:>10.3f} ms {'-':>12} {'-':>8}")
    else:
        print(f"{label:<34} {t_np * 1e3:>10.3f} ms {t_nb * 1e3:>9.3f} ms "
              f"{t_np / t_nb:>7.1f}x")


def main():
    print(f"{'kernel':<34} {'numpy':>13} {'numba':>12} {'speedup':>8}")
    for n in (101, 201, 401):
        g = make_grid(n)
        rng = np.random.default_rng(0)
        w = rng.standard_normal(g.shape)
        p = rng.standard_normal(g.shape)
        field = sample(g, analytic.GaussianBump())
        levels = np.sort(rng.uniform(1e-4, 0.99, 64))
        table = areafn.tabulate(field, budget=4 * n)
        queries = rng.uniform(-0.1, 1.1, 10_000)
        targets = rng.uniform(0.0, table.total, 10_000)

        cases = [
            (f"arakawa_jacobian {n}x{n}", "arakawa_jacobian", (w, p, g.h)),
            (f"areas_at_levels {n}x{n}, 64 levels", "areas_at_levels",
             (field.values, g.h, levels)),
            (f"hermite_eval {n * 4} knots, 10k pts", "hermite_eval",
             (table.levels, table.areas, table.slopes, queries)),
            (f"hermite_invert {n * 4} knots, 10k pts", "hermite_invert",
             (table.levels, table.areas, table.slopes, targets)),
        ]
        for label, name, args in cases:
            t_np = _time(getattr(numpy_impl, name), *args)
            t_nb = None
            if numba_impl is not None:
                fn = getattr(numba_impl, name)
                fn(*args)  # warm the JIT cache
                t_nb = _time(fn, *args)
            _row(label, t_np, t_nb)
        print()


if __name__ == "__main__":
    main()
