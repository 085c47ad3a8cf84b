"""Moving-average-reversion prediction of the next price relative."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

__all__ = ["PredictionWindow", "predict_mar"]


@dataclass
class PredictionWindow:
    """The last ``window - 1`` price relatives, oldest first.

    Together with the current price they determine the ``window``-period
    moving average of prices, expressed relative to the current price.
    """

    window: int
    relatives: deque = field(default_factory=deque)

    def __post_init__(self) -> None:
        if int(self.window) < 2:
            raise ValueError("window size must be >= 2")
        self.window = int(self.window)
        self.relatives = deque(self.relatives, maxlen=self.window - 1)

    def push(self, x: np.ndarray) -> None:
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise ValueError("non-positive price relative")
        self.relatives.append(x)

    def copy(self) -> "PredictionWindow":
        return PredictionWindow(self.window, deque(self.relatives))

    def __len__(self) -> int:
        return len(self.relatives)


def predict_mar(window: PredictionWindow) -> np.ndarray:
    """Predict ``x_{t+1}`` as the moving average of prices divided by ``p_t``.

    Uses ``1 + 1/x_t + 1/(x_t x_{t-1}) + ...`` averaged over the available
    terms, so during warm-up (fewer than ``w - 1`` stored relatives) the
    average is truncated to ``len(window) + 1`` terms.
    """
    if len(window.relatives) == 0:
        raise ValueError("prediction needs at least one observed price relative")
    acc = np.ones_like(window.relatives[-1])
    total = acc.copy()
    for x in reversed(window.relatives):
        acc = acc / x
        total += acc
    return total / (len(window.relatives) + 1)
