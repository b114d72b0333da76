"""Compare the compiled pivot kernel against the NumPy fallback.

Builds matching LPs from k-out samples at a few sizes, solves each with
both kernels, reports wall time and checks that the two backends agree
bit-for-bit on objective value and iteration count (they execute the same
pivot sequence; the compiled kernel is built with FMA contraction off to
keep float results identical).

Run:  python3 benchmarks/bench_simplex.py
"""

from __future__ import annotations

import argparse
import importlib
import statistics
import sys
import time

from fracmatch import lpcore
from fracmatch.matching import matching_lp
from fracmatch.models import HostModel, sample_kout

CASES = [
    # (n, r, k)
    (30, 3, 2),
    (60, 3, 5),
    (60, 3, 10),
    (60, 3, 20),
    (90, 3, 10),
]


def load_kernels():
    kernels = {"numpy": importlib.import_module("fracmatch._simplex_py")}
    try:
        kernels["cython"] = importlib.import_module("fracmatch._simplex")
    except ImportError:
        print("compiled kernel not built; benchmarking the fallback only")
    return kernels


def time_solve(lp, kernel, repeats):
    saved = lpcore._kernel
    lpcore._kernel = kernel
    try:
        times = []
        sol = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            sol = lpcore.solve_float(lp)
            times.append(time.perf_counter() - t0)
        return min(times), sol
    finally:
        lpcore._kernel = saved


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    kernels = load_kernels()
    print(f"{'case':>16} {'edges':>6} " +
          " ".join(f"{name:>12}" for name in kernels) + "   parity")
    speedups = []
    for n, r, k in CASES:
        h = sample_kout(HostModel("complete", n, r), k, args.seed).union
        lp = matching_lp(h)
        results = {name: time_solve(lp, kernel, args.repeats)
                   for name, kernel in kernels.items()}
        cols = " ".join(f"{results[name][0] * 1e3:>10.2f}ms" for name in kernels)
        sols = [results[name][1] for name in kernels]
        parity = all(s.objective == sols[0].objective
                     and s.iterations == sols[0].iterations for s in sols)
        print(f"{f'n={n} k={k}':>16} {len(h.edges):>6} {cols}   "
              f"{'ok' if parity else 'MISMATCH'}")
        if not parity:
            return 1
        if len(kernels) == 2:
            speedups.append(results["numpy"][0] / results["cython"][0])
    if speedups:
        print(f"median speedup (cython over numpy): "
              f"{statistics.median(speedups):.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
