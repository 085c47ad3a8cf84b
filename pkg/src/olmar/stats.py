"""Mean excess return and the alpha t-test against the market."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats as _sps

__all__ = ["StatsReport", "compute_stats", "upper_tail_p"]


@dataclass(frozen=True)
class StatsReport:
    n: int
    mer_strategy: float
    mer_market: float
    alpha: float
    beta: float
    t_statistic: float
    p_value: float

    def to_dict(self) -> dict:
        return asdict(self)


def upper_tail_p(t: float, df: float | None = None) -> float:
    """One-sided ``P(T >= t)``; Student-t with ``df`` degrees of freedom, or normal if ``df`` is None."""
    if df is None:
        return float(_sps.norm.sf(t))
    return float(_sps.t.sf(t, df))


def compute_stats(strategy_returns, market_returns, risk_free: float = 0.0) -> StatsReport:
    """Regress strategy excess returns on market excess returns.

    Returns are per-period gross returns ``s_t``; excess returns are
    ``s_t - 1 - risk_free``. ``alpha`` and ``beta`` are the OLS intercept and
    slope, the t-statistic is ``alpha / SE(alpha)`` and the p-value is its
    upper tail under Student-t with ``n - 2`` degrees of freedom.
    """
    y = np.asarray(strategy_returns, dtype=float) - 1.0 - risk_free
    x = np.asarray(market_returns, dtype=float) - 1.0 - risk_free
    if y.shape != x.shape or y.ndim != 1:
        raise ValueError("strategy and market returns must be 1-d and of equal length")
    n = y.size
    if n < 3:
        raise ValueError("need at least 3 periods for the regression")
    x_mean, y_mean = x.mean(), y.mean()
    dx = x - x_mean
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("market returns have zero variance; beta is undefined")
    beta = float(dx @ (y - y_mean)) / sxx
    alpha = float(y_mean - beta * x_mean)
    resid = y - alpha - beta * x
    sigma2 = float(resid @ resid) / (n - 2)
    se = math.sqrt(sigma2 * (1.0 / n + x_mean**2 / sxx))
    if se == 0.0:
        t_stat = 0.0 if alpha == 0.0 else math.copysign(math.inf, alpha)
    else:
        t_stat = alpha / se
    return StatsReport(
        n=n,
        mer_strategy=float(y_mean),
        mer_market=float(x_mean),
        alpha=alpha,
        beta=beta,
        t_statistic=float(t_stat),
        p_value=upper_tail_p(t_stat, n - 2),
    )
