"""Nonnegative least squares by the Lawson-Hanson active-set method."""

import logging
from typing import Optional, Tuple

import numpy as np

from ..core.constants import NNLS_TOL

logger = logging.getLogger("cbstools")


def _passive_solve(a: np.ndarray, b: np.ndarray, passive: np.ndarray) -> np.ndarray:
    s = np.zeros(a.shape[1])
    idx = np.flatnonzero(passive)
    if idx.size:
        s[idx] = np.linalg.lstsq(a[:, idx], b, rcond=None)[0]
    return s


def nnls(
    a: np.ndarray,
    b: np.ndarray,
    tol: float = NNLS_TOL,
    max_iter: Optional[int] = None,
) -> Tuple[np.ndarray, float]:
    """Solve ``argmin ||a x - b||_2`` subject to ``x >= 0``.

    Ties in the entering variable go to the lowest index (``np.argmax``
    returns the first maximum), so results are deterministic.

    Args:
        a: (n, m) matrix, columns are cone generators.
        b: (n,) target.
        tol: Dual feasibility threshold, scaled by ``max(1, ||a^T b||_inf)``.
        max_iter: Iteration cap, default ``10 * m``.

    Returns:
        (x, residual norm)
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m = a.shape[1]
    if max_iter is None:
        max_iter = 10 * max(m, 1)

    x = np.zeros(m)
    passive = np.zeros(m, dtype=bool)
    w = a.T @ b
    threshold = tol * max(1.0, float(np.max(np.abs(w))) if m else 1.0)

    iterations = 0
    while not passive.all():
        candidates = np.where(passive, -np.inf, w)
        k = int(np.argmax(candidates))
        if candidates[k] <= threshold:
            break
        passive[k] = True
        s = _passive_solve(a, b, passive)

        while np.any(s[passive] <= 0.0):
            iterations += 1
            if iterations > max_iter:
                break
            blocking = passive & (s <= 0.0)
            gap = x[blocking] - s[blocking]
            ratios = np.divide(x[blocking], gap, out=np.zeros_like(gap), where=gap > 0)
            alpha = float(np.min(ratios))
            x = x + alpha * (s - x)
            passive &= x > threshold * 1e-3
            x[~passive] = 0.0
            s = _passive_solve(a, b, passive)

        if not passive[k]:
            # entering variable rejected at once: w[k] > 0 was rounding noise
            break
        x = s
        w = a.T @ (b - a @ x)
        iterations += 1
        if iterations > max_iter:
            logger.debug(f"nnls: iteration cap {max_iter} reached")
            break

    x = np.clip(x, 0.0, None)
    return x, float(np.linalg.norm(a @ x - b))
