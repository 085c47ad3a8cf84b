"""Backtest engine: the period loop, proportional transaction costs and reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import algorithm, baselines
from .base import OnlineStrategy
from .market import MarketSequence
from .stats import StatsReport, compute_stats

__all__ = [
    "STRATEGIES",
    "StrategySpec",
    "BacktestConfig",
    "BacktestRecord",
    "BacktestResult",
    "make_strategy",
    "cost_factor",
    "simulate",
    "run_backtest",
    "wealth_from_portfolios",
]

STRATEGIES = ("olmar", "bah-olmar", "max-olmar", "market", "best-stock", "ucrp", "bcrp", "eg", "pamr")


@dataclass(frozen=True)
class StrategySpec:
    """Strategy name plus every tunable parameter; irrelevant ones are ignored."""

    name: str = "olmar"
    epsilon: float = algorithm.DEFAULT_EPSILON
    window: int = algorithm.DEFAULT_WINDOW
    max_window: int = algorithm.DEFAULT_MAX_WINDOW
    eta: float = baselines.DEFAULT_EG_ETA
    pamr_epsilon: float = baselines.DEFAULT_PAMR_EPSILON

    def __post_init__(self) -> None:
        if self.name not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.name!r}; choose from {', '.join(STRATEGIES)}")

    def params(self) -> dict:
        """The parameters this strategy actually uses."""
        used = {
            "olmar": ("epsilon", "window"),
            "bah-olmar": ("epsilon", "max_window"),
            "max-olmar": ("epsilon", "max_window"),
            "eg": ("eta",),
            "pamr": ("pamr_epsilon",),
        }.get(self.name, ())
        return {k: getattr(self, k) for k in used}


def make_strategy(spec: StrategySpec, seq: MarketSequence | np.ndarray | None = None) -> OnlineStrategy:
    """Build a strategy; hindsight strategies (best-stock, bcrp, max-olmar) need ``seq``."""
    name = spec.name
    if name == "olmar":
        return algorithm.OLMAR(spec.epsilon, spec.window)
    if name == "bah-olmar":
        return algorithm.BAHOlmar(spec.epsilon, spec.max_window)
    if name == "market":
        return baselines.BuyAndHold()
    if name == "ucrp":
        return baselines.ConstantRebalanced()
    if name == "eg":
        return baselines.EG(spec.eta)
    if name == "pamr":
        return baselines.PAMR(spec.pamr_epsilon)
    if seq is None:
        raise ValueError(f"strategy {name!r} is chosen in hindsight and needs the market sequence")
    rel = seq.relatives if isinstance(seq, MarketSequence) else np.asarray(seq, dtype=float)
    if name == "best-stock":
        i, _ = baselines.best_stock(rel)
        weights = np.zeros(rel.shape[1])
        weights[i] = 1.0
        strat = baselines.BuyAndHold(weights)
    elif name == "bcrp":
        strat = baselines.ConstantRebalanced(baselines.bcrp(rel).weights)
    else:
        windows = list(range(3, spec.max_window + 1))
        k, _ = algorithm.max_olmar(algorithm.expert_final_wealths(rel, windows, spec.epsilon))
        strat = algorithm.OLMAR(spec.epsilon, windows[k])
    strat.name = name
    return strat


@dataclass(frozen=True)
class BacktestConfig:
    strategy: StrategySpec = field(default_factory=StrategySpec)
    initial_wealth: float = 1.0
    gamma: float = 0.0

    def __post_init__(self) -> None:
        if not self.initial_wealth > 0:
            raise ValueError("initial wealth must be positive")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("transaction cost rate gamma must lie in [0, 1)")


@dataclass(frozen=True)
class BacktestRecord:
    t: int
    portfolio: np.ndarray
    period_return: float
    cost_factor: float
    wealth: float


@dataclass
class BacktestResult:
    records: list[BacktestRecord]
    initial_wealth: float = 1.0
    gamma: float = 0.0
    strategy: str = ""
    strategy_params: dict = field(default_factory=dict)

    @property
    def final_wealth(self) -> float:
        return self.records[-1].wealth if self.records else self.initial_wealth

    @property
    def wealth_curve(self) -> np.ndarray:
        return np.array([r.wealth for r in self.records])

    @property
    def period_returns(self) -> np.ndarray:
        return np.array([r.period_return for r in self.records])

    @property
    def cost_factors(self) -> np.ndarray:
        return np.array([r.cost_factor for r in self.records])

    @property
    def portfolios(self) -> np.ndarray:
        return np.stack([r.portfolio for r in self.records])

    def stats(self, market_returns: Sequence[float]) -> StatsReport:
        """Alpha/beta statistics using net-of-cost period returns."""
        return compute_stats(self.period_returns * self.cost_factors, market_returns)

    def summary(self) -> dict:
        return {
            "strategy": self.strategy,
            "params": dict(self.strategy_params),
            "gamma": self.gamma,
            "initial_wealth": self.initial_wealth,
            "n": len(self.records),
            "final_wealth": self.final_wealth,
        }


def cost_factor(b_target: np.ndarray, b_evolved: np.ndarray, gamma: float) -> float:
    """Fraction of wealth kept after rebalancing from ``b_evolved`` to ``b_target``.

    Proportional cost ``gamma / 2`` per unit of total turnover.
    """
    if not 0.0 <= gamma < 1.0:
        raise ValueError("transaction cost rate gamma must lie in [0, 1)")
    if gamma == 0.0:
        return 1.0
    turnover = float(np.abs(np.asarray(b_target) - np.asarray(b_evolved)).sum())
    return 1.0 - 0.5 * gamma * turnover


def simulate(relatives: np.ndarray, strategy: OnlineStrategy, gamma: float = 0.0,
             initial_wealth: float = 1.0) -> list[BacktestRecord]:
    """Run ``strategy`` over ``relatives`` and return one record per period.

    The strategy commits ``b_t`` before it is shown ``x_t``. No cost is
    charged for the initial purchase.
    """
    relatives = np.asarray(relatives, dtype=float)
    strategy.start(relatives.shape[1])
    wealth = float(initial_wealth)
    evolved = None
    records = []
    for t, x in enumerate(relatives, start=1):
        b = np.array(strategy.portfolio, dtype=float)
        c = 1.0 if evolved is None else cost_factor(b, evolved, gamma)
        s = float(b @ x)
        wealth = wealth * s * c
        records.append(BacktestRecord(t, b, s, c, wealth))
        evolved = b * x / s
        strategy.observe(x)
    return records


def run_backtest(seq: MarketSequence, config: BacktestConfig | None = None) -> BacktestResult:
    config = config or BacktestConfig()
    strat = make_strategy(config.strategy, seq)
    records = simulate(seq.relatives, strat, config.gamma, config.initial_wealth)
    return BacktestResult(records, config.initial_wealth, config.gamma, config.strategy.name,
                          config.strategy.params())


def wealth_from_portfolios(relatives: np.ndarray, portfolios: np.ndarray, gamma: float = 0.0,
                           initial_wealth: float = 1.0) -> np.ndarray:
    """Wealth curve of a fixed portfolio stream under proportional costs."""
    relatives = np.asarray(relatives, dtype=float)
    portfolios = np.asarray(portfolios, dtype=float)
    if relatives.shape != portfolios.shape:
        raise ValueError("portfolio stream and relatives differ in shape")
    wealth = float(initial_wealth)
    out = np.empty(relatives.shape[0])
    evolved = None
    for t, (b, x) in enumerate(zip(portfolios, relatives)):
        c = 1.0 if evolved is None else cost_factor(b, evolved, gamma)
        s = float(b @ x)
        wealth = wealth * s * c
        out[t] = wealth
        evolved = b * x / s
    return out

