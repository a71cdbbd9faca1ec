"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--sizes 10000 100000] [--repeat 3]
"""
import argparse
import random
import time

import numpy as np

from sturmrep._kernels import _pure
from sturmrep.complexity import word_codes
from sturmrep.words import extremal_word

try:
    from sturmrep._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10_000, 100_000])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _core is None:
        print("compiled extension not built; only the pure backend is available")

    rng = random.Random(0)
    print(f"{'input':<12}{'N':>9}{'kernel':>24}{'pure s':>10}{'cython s':>10}{'speedup':>9}")
    for N in args.sizes:
        inputs = {
            "extremal": extremal_word().prefix(N),
            "random-4": "".join(rng.choice("0123") for _ in range(N)),
        }
        for label, word in inputs.items():
            codes, sigma = word_codes(word)
            for name, args_ in (("longest_earlier_suffix", (codes, sigma)), ("z_array", (codes,))):
                tp, outp = best_of(lambda: getattr(_pure, name)(*args_), args.repeat)
                if _core is None:
                    print(f"{label:<12}{N:>9}{name:>24}{tp:>10.4f}{'-':>10}{'-':>9}")
                    continue
                tc, outc = best_of(lambda: getattr(_core, name)(*args_), args.repeat)
                same = all(np.array_equal(a, b) for a, b in zip(np.atleast_2d(outp), np.atleast_2d(outc)))
                flag = "" if same else "  MISMATCH"
                print(f"{label:<12}{N:>9}{name:>24}{tp:>10.4f}{tc:>10.4f}{tp / tc:>8.1f}x{flag}")


if __name__ == "__main__":
    main()
