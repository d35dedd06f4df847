"""Time the compiled kernels against their pure-Python twins.

Run with ``python benchmarks/bench_kernels.py``; prints one line per case
with the best-of-repeats time for each backend and the speed-up.
"""

import argparse
import time

import numpy as np

from jacobi_edge import _backend
from jacobi_edge.hypergeom import HypergeomSpec, _tables
from jacobi_edge.sampling import beta_shape_table, draw_rng, tridiagonal_model


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def series_case(N, n, sigma, x):
    spec = HypergeomSpec((-N, 1 - N - 2.7 / sigma), (n / sigma,), sigma, n)
    row, sign, pair = _tables(spec, x, N)
    caps = np.full(n, N, dtype=np.int32)
    return lambda k: k.partition_layers(row, sign, pair, caps, N * n)


def bisect_case(N, beta):
    u = draw_rng(0, 0, 0).beta(*beta_shape_table(N, beta, 1.0, 2.0))
    d, e = tridiagonal_model(u)
    return lambda k: k.bisect_eigenvalues(d, e, 0, 0, 1e-13)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)
    if "compiled" not in _backend.BACKENDS:
        print("compiled backend not built; nothing to compare")
        return 1
    cases = [
        ("2F1 series N=20 n=2", series_case(20, 2, 1.5, 0.01)),
        ("2F1 series N=30 n=3", series_case(30, 3, 1.0, 0.002)),
        ("2F1 series N=16 n=4", series_case(16, 4, 0.5, 0.01)),
        ("bisection N=200", bisect_case(200, 2.0)),
        ("bisection N=1000", bisect_case(1000, 1.0)),
    ]
    print(f"{'case':<24}{'compiled s':>12}{'python s':>12}{'speed-up':>10}")
    for name, fn in cases:
        tc = best_of(lambda: fn(_backend.BACKENDS["compiled"]), args.repeats)
        tp = best_of(lambda: fn(_backend.BACKENDS["python"]), args.repeats)
        print(f"{name:<24}{tc:>12.5f}{tp:>12.5f}{tp / tc:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
