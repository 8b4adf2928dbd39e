"""Compare the numba and numpy paths of the floating-point kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--nodes 65536]

Prints best-of-N wall times and the maximum difference between the two
paths.  The first numba call is timed separately since it includes JIT
compilation (or cache loading).
"""

import argparse
import time

import numpy as np

from ratmat import _kernels
from ratmat.matfun import ratmat_from_entries
from ratmat.parser import parse_ratfun


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _contour_case(n):
    rng = np.random.default_rng(7)
    entries = [[parse_ratfun(f"{rng.integers(-3, 4)}*z^2 + {rng.integers(-3, 4)}*z + {rng.integers(1, 4)}") for _ in range(n)] for _ in range(n)]
    for i in range(n):
        entries[i][i] = entries[i][i] + parse_ratfun(f"z^3 + {i + 1}")
    Q = ratmat_from_entries(entries)
    Lc, qc = Q.coefficient_arrays()
    return Lc, qc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--nodes", type=int, default=65536)
    ap.add_argument("--degree", type=int, default=60)
    args = ap.parse_args()
    print(f"numba available: {_kernels.HAVE_NUMBA}")

    Lc, qc = _contour_case(3)
    theta = 2 * np.pi * np.arange(args.nodes) / args.nodes
    nodes = 7.0 * np.exp(1j * theta)
    t_np, ref = _best(lambda: _kernels.contour_integrand(Lc, qc, nodes, use_numba=False), args.repeat)
    print(f"contour integrand, 3x3, {args.nodes} nodes")
    print(f"  numpy : {t_np * 1e3:9.2f} ms")
    if _kernels.HAVE_NUMBA:
        t0 = time.perf_counter()
        _kernels.contour_integrand(Lc, qc, nodes[:8], use_numba=True)
        print(f"  numba first call (jit/cache): {(time.perf_counter() - t0) * 1e3:9.2f} ms")
        t_nb, got = _best(lambda: _kernels.contour_integrand(Lc, qc, nodes, use_numba=True), args.repeat)
        print(f"  numba : {t_nb * 1e3:9.2f} ms  speedup x{t_np / t_nb:5.1f}  max|diff| {np.max(np.abs(got - ref)):.2e}")

    rng = np.random.default_rng(11)
    roots = rng.normal(size=args.degree) + 1j * rng.normal(size=args.degree)
    coeffs = np.poly(roots)[::-1]
    start = np.roots(coeffs[::-1]) * (1 + 1e-6)
    t_np, ref = _best(lambda: _kernels.aberth(coeffs, start, use_numba=False), args.repeat)
    print(f"aberth polishing, degree {args.degree}")
    print(f"  numpy : {t_np * 1e3:9.2f} ms")
    if _kernels.HAVE_NUMBA:
        _kernels.aberth(coeffs, start[:2], use_numba=True)
        t_nb, got = _best(lambda: _kernels.aberth(coeffs, start, use_numba=True), args.repeat)
        diff = np.max(np.abs(np.sort_complex(got) - np.sort_complex(ref)))
        print(f"  numba : {t_nb * 1e3:9.2f} ms  speedup x{t_np / t_nb:5.1f}  max|diff| {diff:.2e}")


if __name__ == "__main__":
    main()
