"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each row times one kernel on a fixed workload with both backends and checks
that they return the same answer.
"""

import argparse
import time

import numpy as np

from bundle_mdpc import _fallback, build_code
from bundle_mdpc.binmat import kernel_basis

try:
    from bundle_mdpc import _kernels
except ImportError:  # extension not built
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def normalise(x):
    if isinstance(x, tuple):
        return tuple(normalise(v) for v in x)
    if isinstance(x, list):
        return sorted(x) if x and isinstance(x[0], int) else x
    return x


def workloads(quick):
    trials = 20_000 if quick else 100_000
    c13 = build_code(13)
    H = c13.H
    thr = c13.v // 2 + 1
    cs, rs = H.column_supports, H.row_supports
    c7 = build_code(7)
    H7 = c7.H
    c4 = build_code(4)
    gens = np.array([b.to_int() for b in kernel_basis(c4.H)], dtype=np.uint64)

    def sample(k):
        def run():
            state = 0
            for t in range(20_000):
                support, state = k.sample_support(k.trial_state(1, 5, t), 366, 5)
            return state
        return run

    return [
        (f"count_successes q=13 w=4 x{trials}",
         lambda k: lambda: k.count_successes(cs, rs, H.rows, thr, 4, 42, 0, trials, 1)),
        ("radius_scan q=7 w=2 (all pairs)",
         lambda k: lambda: k.radius_scan(H7.column_supports, H7.row_supports, H7.rows, 5, 2, 0, H7.cols)),
        ("radius_scan q=13 w=3 first<10",
         lambda k: lambda: k.radius_scan(cs, rs, H.rows, thr, 3, 0, 10)),
        ("gray_scan q=4 (2^23 words)",
         lambda k: lambda: k.gray_scan(gens, 1 << 12)),
        ("sample_support n=366 w=5 x20000", sample),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels are not built; nothing to compare")
        return
    print(f"{'kernel':40s} {'cython':>10s} {'numpy':>10s} {'speedup':>8s}  same")
    for name, make in workloads(args.quick):
        tc, rc = best_of(make(_kernels), args.repeat)
        tp, rp = best_of(make(_fallback), args.repeat)
        same = normalise(rc) == normalise(rp)
        print(f"{name:40s} {tc:9.3f}s {tp:9.3f}s {tp / tc:7.1f}x  {'yes' if same else 'NO'}")


if __name__ == "__main__":
    main()
