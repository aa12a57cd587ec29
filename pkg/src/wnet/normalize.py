"""Balassa index and activity normalization."""

from __future__ import annotations

import warnings

import numpy as np

from .model import NetworkError, WeightMatrix


def balassa(M: WeightMatrix) -> WeightMatrix:
    """A(u,v) = w[u,v] W / (wod(u) wid(v)), measured over expected flow."""
    w = np.where(M.present, M.values, 0.0)
    wod = w.sum(axis=1)
    wid = w.sum(axis=0)
    W = w.sum()
    if W <= 0:
        raise NetworkError("Balassa index needs a positive total weight")
    expected = np.outer(wod, wid)
    if (M.present & (expected <= 0)).any():
        u, v = np.argwhere(M.present & (expected <= 0))[0]
        raise NetworkError(f"zero marginal for present cell ({u}, {v})")
    out = np.zeros_like(w)
    out[M.present] = w[M.present] * W / expected[M.present]
    return M.replace(values=out)


def activity(M: WeightMatrix) -> WeightMatrix:
    """log2 of the Balassa index; present cells with zero weight become absent."""
    A = balassa(M)
    zero = A.present & (A.values <= 0)
    if zero.any():
        warnings.warn(f"{int(zero.sum())} zero-weight cell(s) marked missing in activity matrix", stacklevel=2)
    present = A.present & ~zero
    out = np.zeros_like(A.values)
    out[present] = np.log2(A.values[present])
    return WeightMatrix(out, present, M.labels)
