"""Timing comparison of the compiled and numpy kernel backends.

Shapes mirror the Remez inner loop: short Chebyshev series evaluated on
dense per-band grids, and golden-section refinement over a few dozen
candidate brackets.  Run directly:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from widomlab.kernels import _pyref

try:
    from widomlab.kernels import _fast
except ImportError:
    _fast = None


def best_of(fn, repeat=7):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def clenshaw_case(impl, n_coeff, n_pts, rng):
    c = rng.standard_normal(n_coeff)
    t = rng.uniform(-1.0, 1.0, size=n_pts)
    return lambda: impl.clenshaw(c, t)


def refine_case(impl, n_coeff, n_brackets, rng):
    c = rng.standard_normal(n_coeff)
    lo = np.sort(rng.uniform(-1.0, 0.85, size=n_brackets))
    hi = np.minimum(lo + rng.uniform(0.02, 0.1, size=n_brackets), 1.0)
    return lambda: impl.golden_refine(c, 1.0, 2.0, 0.05, 0.9, lo, hi)


def main():
    rng = np.random.default_rng(1)
    rows = []
    cases = [
        ("clenshaw n=8 x 4096", clenshaw_case, (8, 4096)),
        ("clenshaw n=24 x 4096", clenshaw_case, (24, 4096)),
        ("clenshaw n=40 x 16384", clenshaw_case, (40, 16384)),
        ("golden_refine n=12 x 16", refine_case, (12, 16)),
        ("golden_refine n=24 x 48", refine_case, (24, 48)),
    ]
    for label, maker, shape in cases:
        t_py = best_of(maker(_pyref, *shape, rng))
        if _fast is None:
            rows.append((label, t_py, None))
        else:
            t_c = best_of(maker(_fast, *shape, rng))
            rows.append((label, t_py, t_c))

    print(f"{'case':28} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for label, t_py, t_c in rows:
        if t_c is None:
            print(f"{label:28} {t_py * 1e6:9.1f} us {'-':>12} {'-':>9}")
        else:
            print(f"{label:28} {t_py * 1e6:9.1f} us {t_c * 1e6:9.1f} us "
                  f"{t_py / t_c:8.1f}x")
    if _fast is None:
        print("\ncompiled backend unavailable; showing reference timings only")


if __name__ == "__main__":
    main()
