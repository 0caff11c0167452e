"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--pipeline]

Each kernel is timed on identical inputs taken from the shipped corpus.
``--pipeline`` also times a full p = 2 corpus scan in a subprocess under
each implementation.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from fusionkit import _fallback
from fusionkit.corpus import builtin
from fusionkit.groups import center, sylow

try:
    from fusionkit import _speedups
except ImportError:
    _speedups = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(name):
    G = builtin(name).build()
    T = G.table()
    S = sylow(G, 2)
    Z = center(S).table()
    x = S.table()[-1]
    return {
        "closure": lambda k: k.closure(G._gen_table, 10**6),
        "first_conjugator_into": lambda k: [k.first_conjugator_into(s, T, Z) for s in S.table()],
        "commute_mask": lambda k: k.commute_mask(T, np.ascontiguousarray([x])),
        "normalize_mask": lambda k: k.normalize_mask(T, S._gen_table, S.table()),
        "conjugation_orbit": lambda k: k.conjugation_orbit(x, G._gen_table),
    }


def pipeline(pure):
    env = dict(os.environ)
    if pure:
        env["FUSIONKIT_PURE_PYTHON"] = "1"
    t = time.perf_counter()
    subprocess.run([sys.executable, "-m", "fusionkit", "scan", "--primes", "2"],
                   env=env, check=True, stdout=subprocess.DEVNULL)
    return time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--groups", default="PSL(2,8)xC2;PSL(2,11);3^(1+2)", help="semicolon-separated")
    ap.add_argument("--pipeline", action="store_true")
    args = ap.parse_args()
    if _speedups is None:
        print("compiled kernels not built; only the fallback is available")
    print(f"{'group':<14}{'kernel':<24}{'python ms':>11}{'cython ms':>11}{'speedup':>9}")
    for name in args.groups.split(";"):
        for kname, fn in cases(name).items():
            tp = best_of(lambda: fn(_fallback), args.repeat)
            if _speedups is None:
                print(f"{name:<14}{kname:<24}{tp * 1e3:>11.3f}")
                continue
            tc = best_of(lambda: fn(_speedups), args.repeat)
            print(f"{name:<14}{kname:<24}{tp * 1e3:>11.3f}{tc * 1e3:>11.3f}{tp / tc:>8.1f}x")
    if args.pipeline:
        tp, tc = pipeline(True), pipeline(False)
        print(f"full p=2 scan: python {tp:.2f}s, default {tc:.2f}s, {tp / tc:.1f}x")


if __name__ == "__main__":
    main()
