"""Common interface for online portfolio strategies."""

from __future__ import annotations

import numpy as np

from .simplex import uniform

__all__ = ["OnlineStrategy"]


class OnlineStrategy:
    """A strategy that commits ``portfolio`` for a period, then sees its relatives.

    Subclasses override :meth:`observe`, which receives ``x_t`` and must leave
    the portfolio for period ``t + 1`` in ``self.portfolio``.
    """

    name = "strategy"

    def __init__(self) -> None:
        self.portfolio: np.ndarray | None = None
        self.m: int | None = None

    def start(self, m: int) -> None:
        self.m = m
        self.portfolio = uniform(m)

    def observe(self, x: np.ndarray) -> None:
        raise NotImplementedError

    def step(self, x: np.ndarray) -> float:
        """Return the period return ``b_t . x_t`` and advance to ``b_{t+1}``."""
        if self.portfolio is None:
            self.start(len(x))
        x = np.asarray(x, dtype=float)
        if x.shape != self.portfolio.shape:
            raise ValueError(f"dimension mismatch: strategy has {self.m} assets, got {x.shape[0]}")
        ret = float(self.portfolio @ x)
        self.observe(x)
        return ret
