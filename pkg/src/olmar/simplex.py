"""Portfolio simplex: uniform initialization and Euclidean projection."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["uniform", "project_to_simplex", "is_portfolio", "ZERO_CLAMP"]

# Projected weights below this are treated as zero.
ZERO_CLAMP = 1e-12
_SUM_TOL = 1e-12


def uniform(m: int) -> np.ndarray:
    """Return the uniform portfolio ``(1/m, ..., 1/m)``."""
    if m < 1:
        raise ValueError("uniform portfolio needs m >= 1 assets")
    return np.full(m, 1.0 / m)


def is_portfolio(b: np.ndarray, tol: float = 1e-10) -> bool:
    b = np.asarray(b, dtype=float)
    return bool(b.ndim == 1 and np.all(b >= 0) and abs(b.sum() - 1.0) <= tol)


def _support_threshold(v: np.ndarray) -> float:
    """Randomized-pivot search for the projection threshold, expected O(m).

    Finds ``theta`` with ``sum(max(v - theta, 0)) == 1``.
    """
    # pseudo-random pivots from a fixed-seed LCG keep the run reproducible
    state = 0x5EED
    cand = v
    s = 0.0
    rho = 0
    while cand.size:
        state = (state * 1103515245 + 12345) & 0x7FFFFFFF
        pivot = cand[state % cand.size]
        upper = cand >= pivot
        ds = float(cand[upper].sum())
        dr = int(np.count_nonzero(upper))
        if (s + ds) - (rho + dr) * pivot < 1.0:
            s += ds
            rho += dr
            cand = cand[~upper]
        else:
            # drop one copy of the pivot, keep everything strictly above plus its ties
            above = cand[cand > pivot]
            ties = cand[cand == pivot]
            cand = np.concatenate([above, ties[1:]])
    return (s - 1.0) / rho


def project_to_simplex(v) -> np.ndarray:
    """Euclidean projection of ``v`` onto the probability simplex.

    Expected linear time in ``len(v)``. Points already on the simplex are
    returned unchanged, and the result does not depend on coordinate order.

    >>> project_to_simplex([0.6, 0.6])
    array([0.5, 0.5])
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("projection needs a non-empty 1-d vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite entry in projection input")
    if np.all(v >= 0) and abs(math.fsum(v) - 1.0) <= _SUM_TOL:
        return v.copy()

    theta = _support_threshold(v)
    # re-derive the threshold from the support with an exactly rounded sum so
    # the result is independent of the pivot order
    support = v > theta
    theta = (math.fsum(v[support]) - 1.0) / int(np.count_nonzero(support))
    w = np.maximum(v - theta, 0.0)
    w[w < ZERO_CLAMP] = 0.0
    return w / math.fsum(w)
