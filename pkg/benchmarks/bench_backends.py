"""Compare the numba and numpy successive-cancellation backends.

Times ``decode_received`` on BEC + 1-deletion words at several block
lengths. The numba kernel is compiled before timing.

    python3 benchmarks/bench_backends.py [--n 8 9 10 11] [--reps 5]
"""
import argparse
import statistics
import time

import numpy as np

from polardel._accel import HAVE_NUMBA
from polardel.bounds import simulation_r
from polardel.channels import DeletionParams, TrialRng, cascade_transmit
from polardel.listdecode import decode_received
from polardel.polar import construct_code, polar_encode
from polardel.precode import CrcSpec, attach_redundancy


def workload(n, reps, seed=0):
    N = 1 << n
    r = simulation_r(N)
    code = construct_code(N, 0.3, N // 2 + r, r)
    pre = CrcSpec.default(r)
    g = np.random.default_rng(seed)
    words = []
    for t in range(reps):
        v = attach_redundancy(g.integers(0, 2, N // 2, dtype=np.uint8), pre)
        y, _ = cascade_transmit(polar_encode(v, code), 0.3, DeletionParams(1), TrialRng(seed, t))
        words.append(y)
    return code, pre, words


def median_ms(code, pre, words, backend):
    times = []
    for y in words:
        start = time.perf_counter()
        decode_received(y, code, pre, 1, backend=backend)
        times.append(time.perf_counter() - start)
    return 1000 * statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[8, 9, 10, 11])
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    warm = workload(6, 1)
    for b in backends:
        median_ms(*warm, b)

    print(f"{'N':>6} " + " ".join(f"{b + ' ms':>10}" for b in backends) + f" {'speedup':>8}")
    for n in args.n:
        code, pre, words = workload(n, args.reps)
        ms = [median_ms(code, pre, words, b) for b in backends]
        speedup = f"{ms[0] / ms[1]:8.1f}" if len(ms) == 2 else f"{'-':>8}"
        print(f"{1 << n:>6} " + " ".join(f"{m:10.1f}" for m in ms) + f" {speedup}")


if __name__ == "__main__":
    main()
