#!/usr/bin/env python3
"""Throughput and error-radius profile of the certified midpoint approximation.

Usage:
    python scripts/bench_approx.py --n 200000 --seed 0
"""

import argparse
import random
import sys
import time

from carlson_bounds.bounds import approx_arccos
from carlson_bounds.oracle import arccos_stable


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    xs = [1.0 - 2.0 * rng.random() for _ in range(args.n)]

    t0 = time.perf_counter()
    radii = [approx_arccos(x)[1] for x in xs]
    dt_approx = time.perf_counter() - t0

    t0 = time.perf_counter()
    for x in xs:
        arccos_stable(x)
    dt_stable = time.perf_counter() - t0

    radii.sort()
    q = lambda p: radii[min(int(p * args.n), args.n - 1)]
    print(f"n = {args.n}")
    print(f"approx_arccos: {dt_approx / args.n * 1e6:8.2f} us/call")
    print(f"arccos_stable: {dt_stable / args.n * 1e6:8.2f} us/call")
    print(f"radius median / p90 / max: {q(0.5):.3e} / {q(0.9):.3e} / {radii[-1]:.3e}")
    worst = max(abs(approx_arccos(x)[0] - arccos_stable(x)) for x in xs[:10_000])
    print(f"max |midpoint - float64 arccos| over 10k: {worst:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
