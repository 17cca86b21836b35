"""Compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 4000] [--repeat 3]

Prints one line per kernel with both timings, the speedup and the largest
difference between the two results.
"""
import argparse
import time

import numpy as np

from subdirac import _kernels_py as py

try:
    from subdirac import _kernels as cy
except ImportError:
    cy = None


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def problems(n, seed=0):
    rng = np.random.default_rng(seed)
    d = rng.standard_normal(n)
    e = rng.standard_normal(n - 1)
    m = 4
    A = np.zeros((n // 4, n // 4))
    for k in range(m + 1):
        v = rng.standard_normal(n // 4 - k)
        A += np.diag(v, k) + (np.diag(v, -k) if k else 0)
    return d, e, A, m


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    d, e, A, m = problems(args.n)
    shifts = np.linspace(-3, 3, 200)
    cases = [
        ("sturm_count x200", lambda k: k.sturm_count(d, e, shifts)),
        ("bisect 50 values", lambda k: k.bisect_eigenvalues(d, e, 0, 50)),
        ("tql all values", lambda k: np.sort(k.tql_eigenvalues(d[: args.n // 4], e[: args.n // 4 - 1]))),
        # the two reductions give different tridiagonals; compare their spectra
        ("band -> tridiagonal", lambda k: np.sort(py.tql_eigenvalues(*k.band_to_tridiagonal(A, m)))),
    ]
    if cy is None:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<22}{'cython s':>12}{'python s':>12}{'speedup':>10}{'max diff':>12}")
    for name, fn in cases:
        tp, rp = best_of(lambda: fn(py), args.repeat)
        if cy is None:
            print(f"{name:<22}{'-':>12}{tp:>12.4f}{'-':>10}{'-':>12}")
            continue
        tc, rc = best_of(lambda: fn(cy), args.repeat)
        diff = float(np.max(np.abs(np.asarray(rc, float) - np.asarray(rp, float))))
        print(f"{name:<22}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
