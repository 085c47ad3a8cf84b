"""Per-period log growth of BCRP, PAMR and OLMAR on the cash/stock toy markets.

    python scripts/toy_markets.py --n 600 --max-k 5
"""

import argparse
import math

from olmar.algorithm import OLMAR
from olmar.backtest import simulate
from olmar.baselines import PAMR, bcrp
from olmar.market import ToyMarketSpec, generate_toy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=600)
    ap.add_argument("--max-k", type=int, default=5)
    ap.add_argument("--eps", type=float, default=10.0)
    ap.add_argument("--windows", default="2,3,4,5,6,8,10")
    args = ap.parse_args()
    windows = [int(w) for w in args.windows.split(",")]

    header = ["k", "bcrp", "pamr"] + [f"olmar_w{w}" for w in windows]
    print(",".join(header))
    for k in range(1, args.max_k + 1):
        rel = generate_toy(ToyMarketSpec("D", args.n, k=k)).relatives
        row = [math.log(bcrp(rel).wealth) / args.n, math.log(simulate(rel, PAMR())[-1].wealth) / args.n]
        for w in windows:
            row.append(math.log(simulate(rel, OLMAR(args.eps, w))[-1].wealth) / args.n)
        print(",".join([str(k)] + [f"{g:.6f}" for g in row]))
    print(f"# reference rates: log(9/8)/2={math.log(9 / 8) / 2:.6f}  log(2)/2={math.log(2) / 2:.6f}  "
          f"log(2)/6={math.log(2) / 6:.6f}")


if __name__ == "__main__":
    main()
