"""Benchmark the exact log-partition kernels.

Compares the compiled Gray-code kernel against the pure-numpy
meet-in-the-middle fallback and (for small n) the naive full enumeration.
Run as a script:

    python benchmarks/bench_sk_kernel.py [--sizes 8 12 16 20] [--repeats 5]
"""

import argparse
import time

import numpy as np

from skgibbs import coupling_matrix, draw_disorder
from skgibbs._sk_energy_fallback import naive_log_mean_exp, split_log_mean_exp
from skgibbs.kernels import HAVE_COMPILED, kernel_flavor

if HAVE_COMPILED:
    from skgibbs._sk_energy import gray_log_mean_exp


def _time(fn, repeats):
    best = np.inf
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 20])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--beta", type=float, default=0.6)
    ap.add_argument("--h", type=float, default=0.2)
    args = ap.parse_args()

    print(f"active kernel flavor: {kernel_flavor()}")
    hdr = f"{'n':>4}  {'naive (ms)':>12}  {'split (ms)':>12}  {'gray (ms)':>12}  {'max |diff|':>12}"
    print(hdr)
    print("-" * len(hdr))
    for n in args.sizes:
        sample = draw_disorder(n, master_seed=7, index=0)
        j = coupling_matrix(sample)
        results = {}
        t_naive = np.nan
        if n <= 14:
            t_naive, results["naive"] = _time(
                lambda: naive_log_mean_exp(j, args.beta, args.h), args.repeats)
        t_split, results["split"] = _time(
            lambda: split_log_mean_exp(j, args.beta, args.h), args.repeats)
        t_gray = np.nan
        if HAVE_COMPILED:
            t_gray, results["gray"] = _time(
                lambda: gray_log_mean_exp(j, args.beta, args.h), args.repeats)
        vals = list(results.values())
        spread = max(vals) - min(vals)
        def fmt(t):
            return f"{t * 1e3:12.3f}" if np.isfinite(t) else f"{'-':>12}"
        print(f"{n:>4}  {fmt(t_naive)}  {fmt(t_split)}  {fmt(t_gray)}  {spread:12.3e}")


if __name__ == "__main__":
    main()
