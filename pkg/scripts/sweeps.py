"""Run the epsilon, window and cost-rate sweeps on one market and write CSV tables.

    python scripts/sweeps.py --input nyse_o.csv --out results/
    python scripts/sweeps.py --toy C --n 600 --out results/
"""

import argparse
from pathlib import Path

from olmar.backtest import StrategySpec
from olmar.cli import DEFAULT_COST_GRID, DEFAULT_EPS_GRID, DEFAULT_WINDOW_GRID, sweep_rows
from olmar.market import ToyMarketSpec, generate_toy, load_csv
from olmar.reports import sweep_csv

COST_STRATEGIES = ("olmar", "bah-olmar", "market", "bcrp", "pamr")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--toy")
    ap.add_argument("--n", type=int, default=600)
    ap.add_argument("--k", type=int)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()

    seq = load_csv(args.input) if args.input else generate_toy(ToyMarketSpec(args.toy, args.n, args.k))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    (out / "sweep_epsilon.csv").write_text(
        sweep_csv("epsilon", sweep_rows(seq, "epsilon", DEFAULT_EPS_GRID, StrategySpec("olmar", window=5))))
    (out / "sweep_window.csv").write_text(
        sweep_csv("window", sweep_rows(seq, "window", DEFAULT_WINDOW_GRID, StrategySpec("olmar", epsilon=10.0))))
    rows = []
    for name in COST_STRATEGIES:
        rows += sweep_rows(seq, "cost", DEFAULT_COST_GRID, StrategySpec(name))
    (out / "sweep_cost.csv").write_text(sweep_csv("cost", rows))
    print(f"wrote sweeps for {seq!r} to {out}/")


if __name__ == "__main__":
    main()
