"""Independent reference implementations used only by the tests.

Nothing here imports from the package under test.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize


def sort_projection(v) -> np.ndarray:
    """O(m log m) Euclidean projection onto the simplex via sorting."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u - (css - 1.0) / idx > 0)[0][-1]
    theta = (css[rho] - 1.0) / (rho + 1)
    return np.maximum(v - theta, 0.0)


def moving_average_prediction(prices: np.ndarray, w: int) -> np.ndarray:
    """``MA_t(w) / p_t`` computed directly on a price path (last row is ``p_t``)."""
    prices = np.asarray(prices, dtype=float)
    window = prices[-w:]
    return window.mean(axis=0) / prices[-1]


def closed_form_reference(b, x_pred, eps) -> np.ndarray:
    """Closed-form step written from scratch, then the sort-based projection."""
    b = np.asarray(b, dtype=float)
    x_pred = np.asarray(x_pred, dtype=float)
    m = b.size
    centred = x_pred - np.sum(x_pred) / m
    spread = np.sum(centred**2)
    if spread == 0:
        return b
    lam = max(0.0, (eps - np.dot(b, x_pred)) / spread)
    if lam == 0:
        return b
    return sort_projection(b + lam * centred)


def pre_projection(b, x_pred, eps) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    centred = x_pred - x_pred.mean()
    spread = centred @ centred
    lam = max(0.0, (eps - b @ x_pred) / spread) if spread > 0 else 0.0
    return b + lam * centred


def qp_oracle(b_t, x_pred, eps) -> np.ndarray:
    """min 1/2 ||b - b_t||^2  s.t.  b . x_pred >= eps, b in the simplex (SLSQP)."""
    b_t = np.asarray(b_t, dtype=float)
    x_pred = np.asarray(x_pred, dtype=float)
    m = b_t.size
    res = minimize(
        lambda b: 0.5 * np.sum((b - b_t) ** 2),
        np.full(m, 1.0 / m),
        jac=lambda b: b - b_t,
        method="SLSQP",
        bounds=[(0.0, 1.0)] * m,
        constraints=[
            {"type": "eq", "fun": lambda b: np.sum(b) - 1.0, "jac": lambda b: np.ones(m)},
            {"type": "ineq", "fun": lambda b: b @ x_pred - eps, "jac": lambda b: x_pred},
        ],
        options={"ftol": 1e-15, "maxiter": 1000},
    )
    return res.x


def olmar_price_space(relatives: np.ndarray, eps: float, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Brute-force OLMAR run that keeps a price path and averages prices directly.

    Returns (wealth curve, portfolios held each period).
    """
    relatives = np.asarray(relatives, dtype=float)
    n, m = relatives.shape
    prices = [np.ones(m)]
    b = np.full(m, 1.0 / m)
    wealth = 1.0
    curve, held = [], []
    for x in relatives:
        held.append(b.copy())
        wealth *= float(b @ x)
        curve.append(wealth)
        prices.append(prices[-1] * x)
        path = np.array(prices)
        x_pred = moving_average_prediction(path, min(w, len(path)))
        b = closed_form_reference(b, x_pred, eps)
    return np.array(curve), np.array(held)


def grid_bcrp(relatives: np.ndarray, step: float = 1e-4) -> tuple[float, float]:
    """Best two-asset CRP weight on a grid and its mean log return."""
    relatives = np.asarray(relatives, dtype=float)
    a = np.linspace(0.0, 1.0, int(round(1 / step)) + 1)
    port = np.column_stack([a, 1 - a])
    obj = np.log(relatives @ port.T).mean(axis=0)
    k = int(np.argmax(obj))
    return float(a[k]), float(obj[k])


def ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Intercept and slope by solving the normal equations with lstsq."""
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[0]), float(coef[1])
