"""Monotone weight transformations.

All transforms act on present cells only; absent cells stay absent.
"""

from __future__ import annotations

import numpy as np

from .model import NetworkError, WeightMatrix

N_CUTS = 19


def power_transform(M: WeightMatrix, p: float) -> WeightMatrix:
    if not p > 0:
        raise NetworkError(f"power exponent must be positive, got {p}")
    vals = M.present_values()
    if (vals < 0).any():
        raise NetworkError("power transform needs non-negative weights")
    out = M.values.copy()
    out[M.present] = vals**p
    return M.replace(values=out)


def log_transform(M: WeightMatrix) -> WeightMatrix:
    vals = M.present_values()
    if (vals <= 0).any():
        raise NetworkError("log transform needs strictly positive weights")
    out = M.values.copy()
    out[M.present] = np.log(vals)
    return M.replace(values=out)


def quantile_cuts(values: np.ndarray) -> np.ndarray:
    """The 19 cut points at probabilities i/19, linear interpolation."""
    values = np.asarray(values, dtype=float)
    if values.size < N_CUTS:
        raise NetworkError(f"quantile bins need at least {N_CUTS} values, got {values.size}")
    probs = np.arange(1, N_CUTS + 1) / N_CUTS
    return np.quantile(values, probs, method="linear")


def bin_index(values: np.ndarray, cuts: np.ndarray) -> np.ndarray:
    """Smallest k (1-based) with value < cuts[k], with an implicit +inf at k = 20."""
    # searchsorted 'right' counts cuts <= value, which is k - 1
    return np.searchsorted(cuts, values, side="right") + 1


def quantile_bins(M: WeightMatrix) -> WeightMatrix:
    """Map present cells to 1..10: half-width end bins, eight full inner bins."""
    vals = M.present_values()
    cuts = quantile_cuts(vals)
    out = M.values.copy()
    out[M.present] = np.ceil(bin_index(vals, cuts) / 2)
    return M.replace(values=out)
