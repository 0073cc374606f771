"""Benchmark the compiled kernels against the pure-Python fallback.

Run as ``python -m expfilt.bench`` (add ``--quick`` for smaller sizes).
"""

import argparse
import random
import time

from . import _kernels


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _random_matrix(rng, n, m, p):
    return [[rng.randrange(p) for _ in range(m)] for _ in range(n)]


def run(quick: bool = False) -> list:
    rng = random.Random(0)
    p = 5
    n = 120 if quick else 240
    square = _random_matrix(rng, n, n, p)
    wide = _random_matrix(rng, n, 3 * n, p)
    a = _random_matrix(rng, n, n, p)
    b = _random_matrix(rng, n, n, p)
    nmax = 500 if quick else 2000

    cases = [
        (f"rref {n}x{n} (F_5)", lambda k: k.rref(square, n, p)),
        (f"rref {n}x{3 * n} (F_5)", lambda k: k.rref(wide, 3 * n, p)),
        (f"matmul {n}x{n} (F_5)", lambda k: k.matmul(a, b, p)),
        (
            f"lucas rows n<={nmax} (F_2)",
            lambda k: [k.lucas_row(i, 2) for i in range(nmax - 200, nmax + 1)],
        ),
        (
            f"binom_mod grid n<={nmax} (F_7)",
            lambda k: [k.binom_mod(i, j, 7) for i in range(nmax - 60, nmax) for j in range(0, i, 7)],
        ),
    ]

    backends = _kernels.backends()
    rows = []
    for label, fn in cases:
        timings = {name: _time(lambda m=mod: fn(m)) for name, mod in backends.items()}
        rows.append((label, timings))
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    args = parser.parse_args(argv)

    print(f"active backend: {_kernels.BACKEND}")
    rows = run(quick=args.quick)
    names = sorted({name for _, t in rows for name in t})
    header = f"{'case':36s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for label, timings in rows:
        line = f"{label:36s}"
        for n in names:
            line += f"{timings[n] * 1e3:11.2f}m"
        if "compiled" in timings and "pure" in timings and timings["compiled"] > 0:
            line += f"{timings['pure'] / timings['compiled']:9.1f}x"
        else:
            line += f"{'n/a':>10s}"
        print(line)
    if "compiled" not in names:
        print("\n(compiled backend not built; install with `pip install -e .` to compare)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
