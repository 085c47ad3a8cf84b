"""Wealth-curve CSV and summary JSON outputs, with readers that validate them."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Sequence

import jsonschema
import numpy as np

from .backtest import BacktestResult
from .stats import StatsReport

__all__ = [
    "REPORT_SCHEMA",
    "wealth_csv",
    "read_wealth_csv",
    "report_dict",
    "dumps_report",
    "validate_report",
    "sweep_csv",
    "read_sweep_csv",
]

_NUMBER = {"type": "number"}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["strategy", "params", "gamma", "initial_wealth", "n", "final_wealth", "stats", "metadata"],
    "properties": {
        "strategy": {"type": "string"},
        "params": {"type": "object"},
        "gamma": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
        "initial_wealth": {"type": "number", "exclusiveMinimum": 0},
        "n": {"type": "integer", "minimum": 1},
        "final_wealth": {"type": "number", "exclusiveMinimum": 0},
        "stats": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["n", "mer_strategy", "mer_market", "alpha", "beta", "t_statistic", "p_value"],
                    "properties": {
                        "n": {"type": "integer"},
                        "mer_strategy": _NUMBER,
                        "mer_market": _NUMBER,
                        "alpha": _NUMBER,
                        "beta": _NUMBER,
                        "t_statistic": _NUMBER,
                        "p_value": {"type": "number", "minimum": 0, "maximum": 1},
                    },
                },
            ]
        },
        "source": {"type": "object"},
        "metadata": {"type": "object"},
    },
}


def _g(v: float) -> str:
    return format(float(v), ".17g")


def wealth_csv(result: BacktestResult, asset_names: Sequence[str]) -> str:
    """One row per period: ``t, s_t, c_t, S_t`` then one ``b_<asset>`` column per asset."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "s_t", "c_t", "S_t", *(f"b_{a}" for a in asset_names)])
    for r in result.records:
        writer.writerow([r.t, _g(r.period_return), _g(r.cost_factor), _g(r.wealth), *map(_g, r.portfolio)])
    return buf.getvalue()


def read_wealth_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Parse and check a wealth-curve CSV; returns columns keyed by header."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header[:4] != ["t", "s_t", "c_t", "S_t"] or len(header) < 5:
        raise ValueError(f"{path}: not a wealth-curve CSV")
    data = np.array(body, dtype=float)
    cols = {h: data[:, j] for j, h in enumerate(header)}
    weights = data[:, 4:]
    if not np.array_equal(cols["t"], np.arange(1, len(body) + 1)):
        raise ValueError(f"{path}: periods are not numbered 1..n")
    if np.any(cols["s_t"] <= 0) or np.any(cols["c_t"] <= 0) or np.any(cols["c_t"] > 1):
        raise ValueError(f"{path}: period return or cost factor out of range")
    if np.any(weights < 0) or np.any(np.abs(weights.sum(axis=1) - 1) > 1e-10):
        raise ValueError(f"{path}: portfolio row off the simplex")
    return cols


def report_dict(result: BacktestResult, stats: StatsReport | None, source: dict | None = None,
                metadata: dict | None = None) -> dict:
    out = result.summary()
    out["stats"] = None if stats is None else stats.to_dict()
    if source is not None:
        out["source"] = source
    out["metadata"] = metadata or {}
    return out


def dumps_report(report: dict) -> str:
    validate_report(report)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def validate_report(report: dict) -> None:
    jsonschema.validate(report, REPORT_SCHEMA)


def sweep_csv(axis: str, rows: Sequence[tuple[str, object, float]]) -> str:
    """Rows of ``(label, value, final_wealth)``; label names the strategy for that row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["strategy", axis, "final_wealth"])
    for label, value, wealth in rows:
        writer.writerow([label, _g(value) if isinstance(value, float) else value, _g(wealth)])
    return buf.getvalue()


def read_sweep_csv(path: str | Path) -> list[dict]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        if float(r["final_wealth"]) <= 0:
            raise ValueError(f"{path}: non-positive final wealth")
    return rows
