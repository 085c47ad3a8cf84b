"""On-line moving average reversion (OLMAR) and its expert combinations."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .base import OnlineStrategy
from .prediction import PredictionWindow, predict_mar
from .simplex import project_to_simplex, uniform

__all__ = [
    "OlmarParams",
    "OlmarState",
    "UpdateDiagnostics",
    "ExpertEnsemble",
    "olmar_update",
    "olmar_step",
    "bah_olmar_step",
    "max_olmar",
    "OLMAR",
    "BAHOlmar",
    "expert_final_wealths",
]

DEFAULT_EPSILON = 10.0
DEFAULT_WINDOW = 5
DEFAULT_MAX_WINDOW = 30


@dataclass(frozen=True)
class OlmarParams:
    epsilon: float = DEFAULT_EPSILON
    window: int = DEFAULT_WINDOW

    def __post_init__(self) -> None:
        if not self.epsilon > 1:
            raise ValueError(f"reversion threshold epsilon must be > 1, got {self.epsilon}")
        if int(self.window) != self.window or self.window < 2:
            raise ValueError(f"window size must be an integer >= 2, got {self.window}")


@dataclass(frozen=True)
class UpdateDiagnostics:
    lam: float
    prediction_mean: float
    constraint_value: float


@dataclass
class OlmarState:
    portfolio: np.ndarray
    window: PredictionWindow

    @classmethod
    def initial(cls, m: int, window: int) -> "OlmarState":
        return cls(uniform(m), PredictionWindow(window))

    def copy(self) -> "OlmarState":
        return OlmarState(self.portfolio.copy(), self.window.copy())


def olmar_update(b: np.ndarray, x_pred: np.ndarray, epsilon: float) -> tuple[np.ndarray, UpdateDiagnostics]:
    """One passive-aggressive step toward ``b . x_pred >= epsilon``.

    The closed-form step ignores non-negativity and is then projected back
    onto the simplex. When the constraint already holds, or the prediction
    has all-equal entries, ``b`` is returned as is.
    """
    b = np.asarray(b, dtype=float)
    x_pred = np.asarray(x_pred, dtype=float)
    if b.shape != x_pred.shape:
        raise ValueError("portfolio and prediction dimension mismatch")
    x_bar = float(x_pred.mean())
    value = float(b @ x_pred)
    if value >= epsilon:
        return b, UpdateDiagnostics(0.0, x_bar, value)
    dev = x_pred - x_bar
    denom = float(dev @ dev)
    if denom == 0.0:
        return b, UpdateDiagnostics(0.0, x_bar, value)
    lam = (epsilon - value) / denom
    return project_to_simplex(b + lam * dev), UpdateDiagnostics(lam, x_bar, value)


def olmar_step(state: OlmarState, x: np.ndarray, params: OlmarParams) -> tuple[OlmarState, float]:
    """Realize ``b_t . x_t``, then predict and update to ``b_{t+1}``. Returns a new state."""
    x = np.asarray(x, dtype=float)
    if x.shape != state.portfolio.shape:
        raise ValueError(f"dimension mismatch: state has {state.portfolio.size} assets, got {x.size}")
    ret = float(state.portfolio @ x)
    window = state.window.copy()
    window.push(x)
    b_next, _ = olmar_update(state.portfolio, predict_mar(window), params.epsilon)
    return OlmarState(b_next, window), ret


class OLMAR(OnlineStrategy):
    name = "olmar"

    def __init__(self, epsilon: float = DEFAULT_EPSILON, window: int = DEFAULT_WINDOW) -> None:
        super().__init__()
        self.params = OlmarParams(epsilon, window)
        self.state: OlmarState | None = None
        self.last_diagnostics: UpdateDiagnostics | None = None

    def start(self, m: int) -> None:
        super().start(m)
        self.state = OlmarState.initial(m, self.params.window)
        self.portfolio = self.state.portfolio

    def observe(self, x: np.ndarray) -> None:
        self.state.window.push(x)
        b_next, self.last_diagnostics = olmar_update(
            self.state.portfolio, predict_mar(self.state.window), self.params.epsilon
        )
        self.state.portfolio = b_next
        self.portfolio = b_next


@dataclass
class ExpertEnsemble:
    """Buy-and-hold over OLMAR experts; wealth is in units of total initial wealth."""

    experts: list[OlmarState]
    windows: tuple[int, ...]
    wealths: np.ndarray = field(default=None)

    def __post_init__(self) -> None:
        if len(self.experts) != len(self.windows) or not self.experts:
            raise ValueError("ensemble needs one window per expert and at least one expert")
        if self.wealths is None:
            self.wealths = np.full(len(self.experts), 1.0 / len(self.experts))
        self.wealths = np.asarray(self.wealths, dtype=float)
        if np.any(self.wealths <= 0):
            raise ValueError("expert wealths must be positive")

    @classmethod
    def initial(cls, m: int, max_window: int = DEFAULT_MAX_WINDOW,
                windows: Sequence[int] | None = None) -> "ExpertEnsemble":
        if windows is None:
            if max_window < 3:
                raise ValueError("maximum window W must be >= 3")
            windows = range(3, max_window + 1)
        windows = tuple(int(w) for w in windows)
        return cls([OlmarState.initial(m, w) for w in windows], windows)

    def combined_portfolio(self) -> np.ndarray:
        stacked = np.stack([e.portfolio for e in self.experts])
        return (self.wealths @ stacked) / self.wealths.sum()


def bah_olmar_step(ensemble: ExpertEnsemble, x: np.ndarray,
                   epsilon: float) -> tuple[ExpertEnsemble, np.ndarray, float]:
    """Advance every expert by one period; return the new ensemble, the
    wealth-weighted portfolio that was held, and its period return."""
    x = np.asarray(x, dtype=float)
    combined = ensemble.combined_portfolio()
    if x.shape != combined.shape:
        raise ValueError("dimension mismatch between ensemble and price relatives")
    experts = []
    wealths = ensemble.wealths.copy()
    for k, (state, w) in enumerate(zip(ensemble.experts, ensemble.windows)):
        new_state, ret = olmar_step(state, x, OlmarParams(epsilon, w))
        experts.append(new_state)
        wealths[k] *= ret
    return replace(ensemble, experts=experts, wealths=wealths), combined, float(combined @ x)


def max_olmar(expert_wealths: Sequence[float]) -> tuple[int, float]:
    """Index and value of the best final expert wealth; ties go to the earliest expert."""
    arr = np.asarray(expert_wealths, dtype=float)
    if arr.size == 0:
        raise ValueError("no experts")
    i = int(np.argmax(arr))
    return i, float(arr[i])


class BAHOlmar(OnlineStrategy):
    name = "bah-olmar"

    def __init__(self, epsilon: float = DEFAULT_EPSILON, max_window: int = DEFAULT_MAX_WINDOW,
                 windows: Sequence[int] | None = None) -> None:
        super().__init__()
        if not epsilon > 1:
            raise ValueError(f"reversion threshold epsilon must be > 1, got {epsilon}")
        self.epsilon = float(epsilon)
        self.max_window = max_window
        self.windows = windows
        self.ensemble: ExpertEnsemble | None = None

    def start(self, m: int) -> None:
        super().start(m)
        self.ensemble = ExpertEnsemble.initial(m, self.max_window, self.windows)
        self.portfolio = self.ensemble.combined_portfolio()

    def observe(self, x: np.ndarray) -> None:
        ens = self.ensemble
        for k, (state, w) in enumerate(zip(ens.experts, ens.windows)):
            ens.wealths[k] *= float(state.portfolio @ x)
            state.window.push(x)
            state.portfolio, _ = olmar_update(state.portfolio, predict_mar(state.window), self.epsilon)
        self.portfolio = ens.combined_portfolio()


def expert_final_wealths(relatives: np.ndarray, windows: Sequence[int],
                         epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """Frictionless final wealth of an independent OLMAR run for each window."""
    relatives = np.asarray(relatives, dtype=float)
    out = np.empty(len(windows))
    for k, w in enumerate(windows):
        strat = OLMAR(epsilon, w)
        strat.start(relatives.shape[1])
        wealth = 1.0
        for x in relatives:
            wealth *= strat.step(x)
        out[k] = wealth
    return out
