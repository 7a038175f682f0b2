"""Compiled vs pure-Python exact search.

    python benchmarks/bench_search.py --sizes 6 8 10 12 --reps 5
"""

import argparse
import statistics
import time

from advex.harness import GenSpec, generate
from advex.search import numba_enabled, optimal_walk


def _time(fn, reps):
    out = []
    for _ in range(reps):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return statistics.median(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10, 12])
    ap.add_argument("--density", type=float, default=2.0, help="edges per vertex")
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if not numba_enabled():
        print("numba disabled (ADVEX_NO_NUMBA set or numba missing); timing the fallback only")
    warm = generate(GenSpec(4, 8, seed=0))
    optimal_walk(warm, backend="numba" if numba_enabled() else "python")

    print(f"{'n':>3} {'m':>4} {'numba s':>10} {'python s':>10} {'speedup':>8} agree")
    for n in args.sizes:
        g = generate(GenSpec(n, int(n * args.density), seed=args.seed + n))
        t_py = _time(lambda: optimal_walk(g, backend="python"), args.reps)
        w_py = optimal_walk(g, backend="python")
        if numba_enabled():
            t_nb = _time(lambda: optimal_walk(g, backend="numba"), args.reps)
            agree = optimal_walk(g, backend="numba") == w_py
            print(f"{n:3d} {g.m:4d} {t_nb:10.4f} {t_py:10.4f} {t_py / t_nb:8.1f} {agree}")
        else:
            print(f"{n:3d} {g.m:4d} {'-':>10} {t_py:10.4f} {'-':>8} -")


if __name__ == "__main__":
    main()
