"""Median per-period OLMAR update time as the number of assets grows."""

import argparse
import time

import numpy as np

from olmar.algorithm import OLMAR


def median_update_seconds(m, trials, seed=0):
    rel = np.random.default_rng(seed).uniform(0.8, 1.25, size=(trials + 10, m))
    s = OLMAR(10.0, 5)
    s.start(m)
    for x in rel[:10]:
        s.observe(x)
    times = []
    for x in rel[10:]:
        t0 = time.perf_counter()
        s.observe(x)
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="100,1000,2000,10000,100000")
    ap.add_argument("--trials", type=int, default=100)
    args = ap.parse_args()
    print("m,median_seconds,seconds_per_asset")
    for m in (int(v) for v in args.sizes.split(",")):
        t = median_update_seconds(m, args.trials)
        print(f"{m},{t:.3e},{t / m:.3e}")


if __name__ == "__main__":
    main()
