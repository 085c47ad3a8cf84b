"""Command-line interface: ``backtest``, ``sweep``, ``toygen`` and ``project``.

Exit codes: 0 success, 1 runtime error, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .algorithm import BAHOlmar, max_olmar
from .backtest import STRATEGIES, BacktestConfig, StrategySpec, run_backtest, simulate
from .baselines import market_wealth
from .market import MarketDataError, MarketSequence, ToyMarketSpec, dumps_csv, generate_toy, load_csv
from .reports import dumps_report, report_dict, sweep_csv, wealth_csv
from .simplex import project_to_simplex
from .stats import StatsReport

DEFAULT_EPS_GRID = (1.1, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)
DEFAULT_WINDOW_GRID = tuple(range(3, 31))
DEFAULT_COST_GRID = tuple(round(0.001 * i, 3) for i in range(11))


class UsageError(Exception):
    pass


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="CSV of price relatives (header row of asset names)")
    src.add_argument("--toy", metavar="KIND", choices=list("ABCD"), type=str.upper, help="toy market A, B, C or D")
    p.add_argument("--prices", action="store_true", help="treat --input rows as prices rather than relatives")
    p.add_argument("--k", type=int, help="run length for toy market D")
    p.add_argument("--n", type=int, help="number of toy market periods")


def _add_strategy(p: argparse.ArgumentParser, default: str = "olmar") -> None:
    p.add_argument("--strategy", choices=STRATEGIES, default=default)
    p.add_argument("--eps", type=float, default=10.0, help="OLMAR reversion threshold (default 10)")
    p.add_argument("--w", type=int, default=5, help="OLMAR window size (default 5)")
    p.add_argument("--W", dest="max_window", type=int, default=30, help="BAH/MAX(OLMAR) maximum window (default 30)")
    p.add_argument("--eta", type=float, default=0.05, help="EG learning rate (default 0.05)")
    p.add_argument("--pamr-eps", type=float, default=0.5, help="PAMR threshold (default 0.5)")
    p.add_argument("--gamma", type=float, default=0.0, help="proportional cost rate as a fraction, e.g. 0.001 = 0.1%%")
    p.add_argument("--seed", type=int, default=None, help="reserved; every algorithm here is deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="olmar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    bt = sub.add_parser("backtest", help="run one strategy and write its wealth curve and report")
    _add_source(bt)
    _add_strategy(bt)
    bt.add_argument("--out", metavar="DIR", help="write wealth.csv and report.json here")
    bt.add_argument("--format", choices=("csv", "json"), default="json", help="what to print on stdout")

    sw = sub.add_parser("sweep", help="final wealth over a grid of epsilon, window or cost rate")
    _add_source(sw)
    _add_strategy(sw)
    sw.add_argument("--axis", choices=("epsilon", "window", "cost"), required=True)
    sw.add_argument("--grid", help="comma-separated grid values (defaults follow the axis)")
    sw.add_argument("--out", metavar="DIR", help="write sweep_<axis>.csv here")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")

    tg = sub.add_parser("toygen", help="write a toy market as CSV")
    tg.add_argument("--kind", required=True, choices=list("ABCD"), type=str.upper)
    tg.add_argument("--k", type=int)
    tg.add_argument("--n", type=int, required=True)
    tg.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    pj = sub.add_parser("project", help="Euclidean projection of a vector onto the simplex")
    pj.add_argument("values", nargs="+", type=float)
    return parser


def _load_source(args) -> tuple[MarketSequence, dict]:
    if args.input is not None:
        path = Path(args.input)
        if not path.is_file():
            raise UsageError(f"input file not found: {path}")
        return load_csv(path, prices=args.prices), {"input": str(path), "prices": bool(args.prices)}
    if args.n is None:
        raise UsageError("--toy requires --n")
    spec = ToyMarketSpec(args.toy, args.n, args.k)
    return generate_toy(spec), {"toy": spec.kind, "k": spec.run_length, "n": spec.n}


def _spec(args, name: str | None = None, **overrides) -> StrategySpec:
    fields = dict(name=name or args.strategy, epsilon=args.eps, window=args.w, max_window=args.max_window,
                  eta=args.eta, pamr_epsilon=args.pamr_eps)
    fields.update(overrides)
    return StrategySpec(**fields)


def _warn_window(w: int) -> None:
    if w < 3:
        print(f"warning: window size {w} is below 3; the prediction reduces to single-period reversion",
              file=sys.stderr)


def _write(out_dir: str | None, name: str, text: str) -> None:
    if out_dir is None:
        return
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    (d / name).write_text(text, encoding="utf-8")


def _market_stats(seq: MarketSequence, result) -> StatsReport | None:
    curve = market_wealth(seq)
    market_returns = curve / np.concatenate([[1.0], curve[:-1]])
    try:
        stats = result.stats(market_returns)
    except ValueError:
        return None
    if not np.isfinite([stats.t_statistic, stats.alpha, stats.beta]).all():
        return None
    return stats


def cmd_backtest(args) -> int:
    seq, source = _load_source(args)
    if args.strategy == "olmar":
        _warn_window(args.w)
    config = BacktestConfig(_spec(args), gamma=args.gamma)
    result = run_backtest(seq, config)
    stats = _market_stats(seq, result) if seq.n >= 3 else None
    meta = {"created": _dt.datetime.now(_dt.timezone.utc).isoformat(), "version": __version__}
    report = dumps_report(report_dict(result, stats, source, meta))
    curve = wealth_csv(result, seq.asset_names)
    _write(args.out, "wealth.csv", curve)
    _write(args.out, "report.json", report)
    sys.stdout.write(report if args.format == "json" else curve)
    return 0


def _parse_grid(text: str | None, default: Sequence, cast) -> list:
    if text is None:
        return list(default)
    try:
        grid = [cast(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad grid value: {exc}") from None
    if not grid:
        raise UsageError("sweep grid is empty")
    return grid


def sweep_rows(seq: MarketSequence, axis: str, grid: Sequence, base: StrategySpec,
               gamma: float = 0.0) -> list[tuple[str, object, float]]:
    """Final wealth per grid point, in grid order."""
    rows: list[tuple[str, object, float]] = []
    if axis == "epsilon":
        for eps in grid:
            spec = replace(base, epsilon=float(eps))
            rows.append((spec.name, float(eps), run_backtest(seq, BacktestConfig(spec, gamma=gamma)).final_wealth))
    elif axis == "window":
        wealths = []
        for w in grid:
            spec = replace(base, name="olmar", window=int(w))
            wealths.append(run_backtest(seq, BacktestConfig(spec, gamma=gamma)).final_wealth)
            rows.append(("olmar", int(w), wealths[-1]))
        windows = [int(w) for w in grid]
        bah = simulate(seq.relatives, BAHOlmar(base.epsilon, windows=windows), gamma)
        label = f"{windows[0]}-{windows[-1]}" if windows == list(range(windows[0], windows[-1] + 1)) else "grid"
        rows.append(("bah-olmar", label, bah[-1].wealth))
        k, best = max_olmar(wealths)
        rows.append(("max-olmar", windows[k], best))
    elif axis == "cost":
        for g in grid:
            rows.append((base.name, float(g), run_backtest(seq, BacktestConfig(base, gamma=float(g))).final_wealth))
    else:
        raise ValueError(f"unknown sweep axis {axis!r}")
    return rows


def cmd_sweep(args) -> int:
    seq, _ = _load_source(args)
    if args.axis == "epsilon":
        grid = _parse_grid(args.grid, DEFAULT_EPS_GRID, float)
        name = args.strategy if args.strategy in ("olmar", "bah-olmar", "max-olmar") else "olmar"
        base = _spec(args, name)
    elif args.axis == "window":
        grid = _parse_grid(args.grid, DEFAULT_WINDOW_GRID, int)
        base = _spec(args, "olmar")
        _warn_window(min(grid))
    else:
        grid = _parse_grid(args.grid, DEFAULT_COST_GRID, float)
        base = _spec(args)
    rows = sweep_rows(seq, args.axis, grid, base, gamma=args.gamma if args.axis != "cost" else 0.0)
    table = sweep_csv(args.axis, rows)
    _write(args.out, f"sweep_{args.axis}.csv", table)
    if args.format == "csv":
        sys.stdout.write(table)
    else:
        payload = [{"strategy": s, args.axis: v, "final_wealth": w} for s, v, w in rows]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_toygen(args) -> int:
    text = dumps_csv(generate_toy(ToyMarketSpec(args.kind, args.n, args.k)))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_project(args) -> int:
    w = project_to_simplex(args.values)
    sys.stdout.write(",".join(format(float(v), ".17g") for v in w) + "\n")
    return 0


COMMANDS = {"backtest": cmd_backtest, "sweep": cmd_sweep, "toygen": cmd_toygen, "project": cmd_project}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, MarketDataError, ValueError) as exc:
        print(f"olmar {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"olmar {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
