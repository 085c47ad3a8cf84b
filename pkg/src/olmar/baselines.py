"""Comparison strategies: Market, Best-stock, UCRP, BCRP, EG and PAMR."""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np

from .base import OnlineStrategy
from .market import MarketSequence
from .simplex import project_to_simplex, uniform

__all__ = [
    "BCRPResult",
    "ConvergenceWarning",
    "market_wealth",
    "best_stock",
    "bcrp",
    "eg_update",
    "pamr_update",
    "BuyAndHold",
    "ConstantRebalanced",
    "EG",
    "PAMR",
]

DEFAULT_EG_ETA = 0.05
DEFAULT_PAMR_EPSILON = 0.5


class ConvergenceWarning(RuntimeWarning):
    pass


def _relatives(seq) -> np.ndarray:
    rel = seq.relatives if isinstance(seq, MarketSequence) else np.asarray(seq, dtype=float)
    if rel.ndim != 2 or rel.shape[0] < 1 or rel.shape[1] < 1:
        raise ValueError("expected an (n, m) array of price relatives")
    if np.any(rel <= 0) or not np.all(np.isfinite(rel)):
        raise ValueError("price relatives must be positive and finite")
    return rel


def market_wealth(seq) -> np.ndarray:
    """Wealth curve ``S_1..S_n`` of buying the uniform portfolio and holding it."""
    rel = _relatives(seq)
    return np.cumprod(rel, axis=0).mean(axis=1)


def best_stock(seq) -> tuple[int, float]:
    """The single asset with the largest cumulative product, and that product."""
    final = np.prod(_relatives(seq), axis=0)
    i = int(np.argmax(final))
    return i, float(final[i])


class BCRPResult(NamedTuple):
    weights: np.ndarray
    wealth: float


def _mean_log(rel: np.ndarray, b: np.ndarray) -> float:
    return float(np.mean(np.log(rel @ b)))


def bcrp(seq, tol: float = 1e-10, max_iter: int = 100_000) -> BCRPResult:
    """Best constant rebalanced portfolio in hindsight.

    Projected gradient ascent on the mean log return with backtracking. Stops
    once a step gains less than ``tol`` in the objective at a stationary
    point. On hitting ``max_iter`` a :class:`ConvergenceWarning` is issued
    and the best iterate is returned.
    """
    rel = _relatives(seq)
    b = uniform(rel.shape[1])
    f = _mean_log(rel, b)
    step = 1.0
    converged = False
    for _ in range(max_iter):
        grad = rel.T @ (1.0 / (rel @ b)) / rel.shape[0]
        step = min(step * 2.0, 1e8)
        while True:
            cand = project_to_simplex(b + step * grad)
            f_cand = _mean_log(rel, cand)
            if f_cand >= f + 1e-4 * float(grad @ (cand - b)):
                break
            step *= 0.5
            if step < 1e-16:
                cand, f_cand = b, f
                break
        gain = f_cand - f
        b, f = cand, f_cand
        # stationarity: the unit projected-gradient step barely moves b
        stationary = float(np.abs(project_to_simplex(b + grad) - b).max()) < 1e-9
        if gain < tol and stationary:
            converged = True
            break
    if not converged:
        warnings.warn(f"bcrp did not converge in {max_iter} iterations", ConvergenceWarning, stacklevel=2)
    return BCRPResult(b, float(np.prod(rel @ b)))


def eg_update(b: np.ndarray, x: np.ndarray, eta: float = DEFAULT_EG_ETA) -> np.ndarray:
    """Exponentiated gradient: ``b_i * exp(eta * x_i / (b . x))``, renormalized."""
    if eta < 0:
        raise ValueError("EG learning rate must be >= 0")
    if eta == 0:
        return b
    g = x / float(b @ x)
    # shifting the exponent leaves the normalized result unchanged
    w = b * np.exp(eta * (g - g.max()))
    return w / w.sum()


def pamr_update(b: np.ndarray, x: np.ndarray, epsilon: float = DEFAULT_PAMR_EPSILON) -> np.ndarray:
    """PAMR-0: move against the last price relative when ``b . x`` exceeds ``epsilon``."""
    dev = x - x.mean()
    denom = float(dev @ dev)
    loss = float(b @ x) - epsilon
    if loss <= 0 or denom == 0.0:
        return b
    return project_to_simplex(b - (loss / denom) * dev)


class BuyAndHold(OnlineStrategy):
    """Buy ``weights`` at the start and never rebalance (uniform: the Market)."""

    name = "market"

    def __init__(self, weights: np.ndarray | None = None) -> None:
        super().__init__()
        self.initial = None if weights is None else np.asarray(weights, dtype=float)

    def start(self, m: int) -> None:
        super().start(m)
        if self.initial is not None:
            if self.initial.shape != (m,):
                raise ValueError("buy-and-hold weights have the wrong dimension")
            self.portfolio = self.initial.copy()

    def observe(self, x: np.ndarray) -> None:
        grown = self.portfolio * x
        self.portfolio = grown / grown.sum()


class ConstantRebalanced(OnlineStrategy):
    """Rebalance to fixed weights every period (uniform weights: UCRP)."""

    name = "ucrp"

    def __init__(self, weights: np.ndarray | None = None) -> None:
        super().__init__()
        self.weights = None if weights is None else np.asarray(weights, dtype=float)

    def start(self, m: int) -> None:
        super().start(m)
        if self.weights is not None:
            if self.weights.shape != (m,):
                raise ValueError("CRP weights have the wrong dimension")
            self.portfolio = self.weights.copy()
        else:
            self.weights = self.portfolio.copy()

    def observe(self, x: np.ndarray) -> None:
        self.portfolio = self.weights


class EG(OnlineStrategy):
    name = "eg"

    def __init__(self, eta: float = DEFAULT_EG_ETA) -> None:
        super().__init__()
        if eta < 0:
            raise ValueError("EG learning rate must be >= 0")
        self.eta = float(eta)

    def observe(self, x: np.ndarray) -> None:
        self.portfolio = eg_update(self.portfolio, x, self.eta)


class PAMR(OnlineStrategy):
    name = "pamr"

    def __init__(self, epsilon: float = DEFAULT_PAMR_EPSILON) -> None:
        super().__init__()
        if epsilon < 0:
            raise ValueError("PAMR epsilon must be >= 0")
        self.epsilon = float(epsilon)

    def observe(self, x: np.ndarray) -> None:
        self.portfolio = pamr_update(self.portfolio, x, self.epsilon)
