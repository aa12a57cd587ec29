"""Weighted hubs and authorities with size-corrected hubness/authorityness."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .model import Network, NetworkError, to_matrix, weighted_degrees


@dataclass(frozen=True, eq=False)
class HitsResult:
    x: np.ndarray  # authorities
    y: np.ndarray  # hubs
    qh: np.ndarray
    qa: np.ndarray
    wod: np.ndarray
    wid: np.ndarray
    W_total: float
    iterations: int
    converged: bool


def _power_iteration(W: np.ndarray, tol: float, max_iter: int):
    n = W.shape[0]
    y = np.ones(n)
    x = np.zeros(n)
    for it in range(1, max_iter + 1):
        x_new = W.T @ y
        x_new /= np.linalg.norm(x_new)
        y_new = W @ x_new
        y_new /= np.linalg.norm(y_new)
        change = max(np.abs(x_new - x).max(), np.abs(y_new - y).max())
        x, y = x_new, y_new
        if change < tol:
            return x, y, it, True
    return x, y, max_iter, False


def hubness_authorityness(net: Network, res: HitsResult) -> tuple[np.ndarray, np.ndarray]:
    """Return (qh, qa).

    qa(v) = W y_v / (wod(v) sum y) and qh(v) = W x_v / (wid(v) sum x).
    Nodes with a zero weighted degree get NaN.
    """
    wod = weighted_degrees(net, "out")
    wid = weighted_degrees(net, "in")
    W = wod.sum()
    if W <= 0:
        raise NetworkError("hubness/authorityness need a positive total weight")
    with np.errstate(divide="ignore", invalid="ignore"):
        qa = np.where(wod > 0, W * res.y / (wod * res.y.sum()), np.nan)
        qh = np.where(wid > 0, W * res.x / (wid * res.x.sum()), np.nan)
    return qh, qa


def hits(net: Network, tol: float = 1e-12, max_iter: int = 10000) -> HitsResult:
    """Alternate x <- W^T y, y <- W x from y = 1, L2-normalizing both each step."""
    if net.m == 0 or net.total_weight() <= 0:
        raise NetworkError("HITS needs at least one arc with positive weight")
    W = to_matrix(net).values
    x, y, iterations, converged = _power_iteration(W, tol, max_iter)
    if not converged:
        warnings.warn(f"HITS did not converge within {max_iter} iterations", stacklevel=2)
    wod = weighted_degrees(net, "out")
    wid = weighted_degrees(net, "in")
    partial = HitsResult(x, y, None, None, wod, wid, float(wod.sum()), iterations, converged)
    qh, qa = hubness_authorityness(net, partial)
    return HitsResult(x, y, qh, qa, wod, wid, float(wod.sum()), iterations, converged)
