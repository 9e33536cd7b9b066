"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--pairs 100000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from dispheres import kernels
from dispheres.oracle import build_grid
from dispheres.verify import SAMPLE_DENOMINATOR, sample_boundary_pairs


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("extension not built; only the fallback is available")
    den = SAMPLE_DENOMINATOR
    X, Y = sample_boundary_pairs(np.random.default_rng(0), 4, args.pairs, den)
    order = [0, 1, 2, 3]
    indptr, indices = build_grid(3, 4).csr()

    cases = {
        f"batch_reachable ({args.pairs} pairs, n=3)": lambda b: kernels.batch_reachable(X, Y, den, b),
        f"batch_violates ({args.pairs} pairs, n=3)": lambda b: kernels.batch_violates(X, Y, den, order, b),
        f"batch_staircase_leaves ({args.pairs} pairs, n=3)":
            lambda b: kernels.batch_staircase_leaves(X, Y, den, order, b),
        f"batch_plan_on_boundary ({args.pairs} pairs, n=3)":
            lambda b: kernels.batch_plan_on_boundary(X, Y, den, b),
        f"reach_closure (grid n=3, m=4, {len(indptr) - 1} vertices)":
            lambda b: kernels.reach_closure(indptr, indices, b),
    }
    names = sorted(backends)
    print(f"{'kernel':<52}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, run in cases.items():
        secs = {n: best_of(lambda: run(backends[n]), args.repeat) for n in names}
        row = f"{label:<52}" + "".join(f"{secs[n]:>11.4f}s" for n in names)
        if len(names) == 2:
            row += f"{secs['python'] / secs['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
