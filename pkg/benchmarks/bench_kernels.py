"""Compare the compiled and pure-Python window scans.

    python benchmarks/bench_kernels.py [--window W] [--k K] [--repeat N]

The pure-Python backend is timed on a smaller window by default since the
associativity scan is cubic in the window size.
"""

import argparse
import time

from bzf import _pykernels, kernels
from bzf.core import FamilySpec, enumerate_window

try:
    from bzf import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--window", type=int, default=2)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    arr = kernels.as_array(enumerate_window(args.window, args.k, FamilySpec.finite(args.k)))
    n = len(arr)
    print(f"window W={args.window} k={args.k}: {n} elements, {n**3} triples, {n**2} pairs")
    cases = [
        ("assoc_scan", lambda m: m.assoc_scan(arr), n**3),
        ("aut_hom_scan", lambda m: m.aut_hom_scan(arr, 1, 1, args.k), n**2),
    ]
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    for label, fn, work in cases:
        row = {}
        for name, mod in backends:
            t, out = best_of(lambda: fn(mod), args.repeat)
            assert out == -1, (label, name, out)
            row[name] = t
            print(f"  {label:13s} {name:7s} {t * 1e3:10.3f} ms  {work / t / 1e6:8.2f} M/s")
        if "cython" in row:
            print(f"  {label:13s} speedup {row['python'] / row['cython']:.0f}x")


if __name__ == "__main__":
    main()
