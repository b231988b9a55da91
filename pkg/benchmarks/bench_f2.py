"""Compare the numba and numpy F2 row-reduction kernels.

    python3 benchmarks/bench_f2.py [--sizes 64 128 256 512] [--repeat 3]

Each size runs on a random square matrix of density 1/2; both backends must
agree on the reduced form before timings are reported.  With
NICEHF_DISABLE_NUMBA=1 only the numpy column is filled.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from nicehf import _accel
from nicehf.zlinalg import f2


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    if _accel.HAVE_NUMBA:
        f2.rref(np.eye(2, dtype=np.uint8), backend="numba")  # compile outside the timings
    print(f"{'n':>6} " + " ".join(f"{b + ' (s)':>12}" for b in backends) + f" {'speedup':>9}")
    for n in args.sizes:
        a = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        ref = f2.rref(a, backend="numpy")
        times = []
        for b in backends:
            out = f2.rref(a, backend=b)
            if not (np.array_equal(out[0], ref[0]) and out[1] == ref[1]):
                print(f"backend {b} disagrees at n={n}", file=sys.stderr)
                return 1
            times.append(best_of(lambda: f2.rref(a, backend=b), args.repeat))
        speed = f"{times[0] / times[1]:9.1f}" if len(times) == 2 else f"{'-':>9}"
        print(f"{n:>6} " + " ".join(f"{t:12.5f}" for t in times) + f" {speed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
