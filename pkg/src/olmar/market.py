"""Market sequences: CSV ingestion, price-to-relative conversion and toy markets.

A market sequence is an ``(n, m)`` array of price relatives, row ``t`` holding
``x_t = p_t / p_{t-1}`` for each of the ``m`` assets.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MarketDataError",
    "MarketSequence",
    "ToyMarketSpec",
    "check_relatives",
    "load_csv",
    "loads_csv",
    "write_csv",
    "dumps_csv",
    "prices_to_relatives",
    "generate_toy",
]


class MarketDataError(ValueError):
    """Raised for malformed or invalid market data."""


def check_relatives(x: Sequence[float] | np.ndarray, m: int | None = None) -> np.ndarray:
    """Validate a single price relative vector and return it as a float array."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise MarketDataError("price relative vector must be one-dimensional")
    if m is not None and arr.shape[0] != m:
        raise MarketDataError(f"dimension mismatch: expected {m} assets, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise MarketDataError("non-finite price relative")
    if np.any(arr <= 0):
        raise MarketDataError("non-positive price relative")
    return arr


@dataclass(frozen=True, eq=False)
class MarketSequence:
    """An ordered sequence of ``n`` price relative vectors over ``m >= 2`` assets."""

    asset_names: tuple[str, ...]
    relatives: np.ndarray

    def __post_init__(self) -> None:
        rel = np.array(self.relatives, dtype=float)
        if rel.ndim != 2:
            raise MarketDataError("relatives must be a 2-d array of shape (n, m)")
        n, m = rel.shape
        if n < 1:
            raise MarketDataError("market sequence needs at least one period")
        if m < 2:
            raise MarketDataError("market sequence needs at least two assets")
        names = tuple(str(a) for a in self.asset_names)
        if len(names) != m:
            raise MarketDataError(f"{len(names)} asset names for {m} columns")
        if not np.all(np.isfinite(rel)):
            raise MarketDataError("non-finite price relative")
        if np.any(rel <= 0):
            t, i = np.argwhere(rel <= 0)[0]
            raise MarketDataError(f"non-positive price relative at period {t + 1}, asset {names[i]!r}")
        rel.setflags(write=False)
        object.__setattr__(self, "asset_names", names)
        object.__setattr__(self, "relatives", rel)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]], asset_names: Sequence[str] | None = None) -> "MarketSequence":
        rel = np.asarray([list(r) for r in rows], dtype=float)
        if asset_names is None:
            asset_names = [f"asset{i}" for i in range(rel.shape[1] if rel.ndim == 2 else 0)]
        return cls(tuple(asset_names), rel)

    @property
    def n(self) -> int:
        return self.relatives.shape[0]

    @property
    def m(self) -> int:
        return self.relatives.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, t: int) -> np.ndarray:
        return self.relatives[t]

    def __iter__(self):
        return iter(self.relatives)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarketSequence):
            return NotImplemented
        return self.asset_names == other.asset_names and np.array_equal(self.relatives, other.relatives)

    def __repr__(self) -> str:
        return f"MarketSequence(m={self.m}, n={self.n}, assets={list(self.asset_names)})"


@dataclass(frozen=True)
class ToyMarketSpec:
    """Cash plus one stock that alternates runs of doubling and halving.

    Kinds A, B and C fix the run length to 1, 2 and 3; kind D takes ``k``.
    """

    kind: str
    n: int
    k: int | None = None

    _FIXED = {"A": 1, "B": 2, "C": 3}

    def __post_init__(self) -> None:
        kind = str(self.kind).upper()
        if kind not in ("A", "B", "C", "D"):
            raise MarketDataError(f"unknown toy market kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == "D":
            if self.k is None or int(self.k) < 1:
                raise MarketDataError("toy market D requires run length k >= 1")
        elif self.k is not None and int(self.k) != self._FIXED[kind]:
            raise MarketDataError(f"toy market {kind} has fixed run length {self._FIXED[kind]}")
        if int(self.n) < 1:
            raise MarketDataError("toy market needs n >= 1 periods")

    @property
    def run_length(self) -> int:
        return int(self.k) if self.kind == "D" else self._FIXED[self.kind]


def generate_toy(spec: ToyMarketSpec) -> MarketSequence:
    """Generate a toy market: ``k`` periods of ``(1, 2)`` then ``k`` of ``(1, 1/2)``, repeated."""
    k = spec.run_length
    t = np.arange(spec.n)
    stock = np.where((t // k) % 2 == 0, 2.0, 0.5)
    rel = np.column_stack([np.ones(spec.n), stock])
    return MarketSequence(("cash", "stock"), rel)


def prices_to_relatives(prices: Sequence[Sequence[float]] | np.ndarray,
                        asset_names: Sequence[str] | None = None) -> MarketSequence:
    """Convert ``n + 1`` rows of prices into ``n`` price relatives."""
    p = np.asarray(prices, dtype=float)
    if p.ndim != 2 or p.shape[0] < 2:
        raise MarketDataError("need at least 2 price rows")
    if not np.all(np.isfinite(p)) or np.any(p <= 0):
        raise MarketDataError("non-positive price")
    if asset_names is None:
        asset_names = [f"asset{i}" for i in range(p.shape[1])]
    return MarketSequence(tuple(asset_names), p[1:] / p[:-1])


def _parse_rows(lines: Iterable[str], source: str, prices: bool) -> MarketSequence:
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise MarketDataError(f"{source}: empty file") from None
    names = [h.strip() for h in header]
    if any(not h for h in names):
        raise MarketDataError(f"{source}: blank asset name in header")
    m = len(names)
    rows: list[list[float]] = []
    for lineno, raw in enumerate(reader, start=2):
        if not raw or all(not c.strip() for c in raw):
            continue
        if len(raw) != m:
            raise MarketDataError(f"{source}: ragged row at line {lineno}: expected {m} fields, got {len(raw)}")
        row = []
        for col, cell in enumerate(raw):
            try:
                v = float(cell)
            except ValueError:
                raise MarketDataError(
                    f"{source}: non-numeric entry {cell.strip()!r} at line {lineno}, column {names[col]!r}"
                ) from None
            if not math.isfinite(v) or v <= 0:
                kind = "price" if prices else "price relative"
                raise MarketDataError(f"{source}: non-positive {kind} {cell.strip()!r} at line {lineno}, column {names[col]!r}")
            row.append(v)
        rows.append(row)
    if prices:
        return prices_to_relatives(rows, names)
    if not rows:
        raise MarketDataError(f"{source}: no data rows")
    return MarketSequence(tuple(names), np.asarray(rows, dtype=float))


def load_csv(path: str | Path, prices: bool = False) -> MarketSequence:
    """Load a market sequence from CSV.

    The first row names the assets and every later row is one period. With
    ``prices=True`` the rows are prices and are converted to relatives.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        return _parse_rows(fh, str(path), prices)


def loads_csv(text: str, prices: bool = False) -> MarketSequence:
    return _parse_rows(io.StringIO(text), "<string>", prices)


def dumps_csv(seq: MarketSequence) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(seq.asset_names)
    for row in seq.relatives:
        # 17 significant digits round-trip every double exactly
        writer.writerow([format(float(v), ".17g") for v in row])
    return buf.getvalue()


def write_csv(seq: MarketSequence, path: str | Path) -> None:
    Path(path).write_text(dumps_csv(seq), encoding="utf-8")
