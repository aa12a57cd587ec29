"""Node-by-node dissimilarities computed from a weight matrix.

Row methods compare the rows w[u, .] and w[v, .]. The corrected variants
pair w[u, u] with w[v, v] and w[u, v] with w[v, u] instead of comparing
both rows at positions u and v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import NetworkError, WeightMatrix

ROW_METHODS = (
    "euclid",
    "corrected_euclid",
    "salton_1m",
    "salton_acos",
    "corrected_salton_1m",
    "corrected_salton_acos",
)
LINK_METHODS = ("D1", "D2")


@dataclass(frozen=True, eq=False)
class DissimMatrix:
    values: np.ndarray
    labels: tuple[str, ...]
    method: str = ""

    def __post_init__(self):
        D = np.array(self.values, dtype=float)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise NetworkError("dissimilarity matrix must be square")
        if not np.isfinite(D).all():
            raise NetworkError("dissimilarity matrix has non-finite entries")
        if not np.array_equal(D, D.T):
            raise NetworkError("dissimilarity matrix is not symmetric")
        if np.any(np.diag(D) != 0):
            raise NetworkError("dissimilarity matrix needs a zero diagonal")
        D.flags.writeable = False
        object.__setattr__(self, "values", D)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _symmetrize(D: np.ndarray) -> np.ndarray:
    # pairwise formulas are symmetric; this removes rounding asymmetry only
    D = np.triu(D, 1)
    return D + D.T


def _corrected_pair_vectors(w: np.ndarray, u: int, v: int):
    """Rows u and v rearranged so that corresponding entries are comparable."""
    n = w.shape[0]
    others = [t for t in range(n) if t not in (u, v)]
    if u == v:
        return w[u], w[v]
    a = np.concatenate([w[u, others], [w[u, u], w[u, v]]])
    b = np.concatenate([w[v, others], [w[v, v], w[v, u]]])
    return a, b


def corrected_salton_pair(M: WeightMatrix | np.ndarray, u: int, v: int) -> float:
    """S'(u, v) with absent cells read as 0."""
    w = M.values if isinstance(M, WeightMatrix) else np.asarray(M, dtype=float)
    ru, rv = w[u], w[v]
    nu, nv = ru @ ru, rv @ rv
    if nu == 0 or nv == 0:
        raise NetworkError(f"corrected Salton index undefined for a zero row ({u}, {v})")
    num = ru @ rv + (w[u, u] - w[u, v]) * (w[v, v] - w[v, u])
    return float(num / math.sqrt(nu * nv))


def _pairwise(M: WeightMatrix, method: str, missing: str) -> np.ndarray:
    n = M.n
    w = M.values
    mask = M.present if missing == "pairwise" else np.ones_like(M.present)
    D = np.zeros((n, n))
    for u in range(n):
        for v in range(u + 1, n):
            if method == "euclid":
                a, b, ma, mb = w[u], w[v], mask[u], mask[v]
            else:
                a, b = _corrected_pair_vectors(w, u, v)
                ma, mb = _corrected_pair_vectors(mask, u, v)
            ok = ma & mb
            if not ok.any():
                raise NetworkError(f"rows {u} and {v} share no present cell")
            diff = a[ok] - b[ok]
            D[u, v] = math.sqrt(diff @ diff)
    return D


def _salton(w: np.ndarray, corrected: bool) -> np.ndarray:
    norms = np.einsum("ij,ij->i", w, w)
    if (norms == 0).any():
        bad = int(np.flatnonzero(norms == 0)[0])
        raise NetworkError(f"Salton index undefined for zero row {bad}")
    inner = w @ w.T
    if corrected:
        d = np.diag(w)
        # (w[u,u] - w[u,v]) * (w[v,v] - w[v,u])
        inner = inner + (d[:, None] - w) * (d[None, :] - w.T)
    S = inner / np.sqrt(np.outer(norms, norms))
    np.fill_diagonal(S, 1.0)
    return S


def row_dissimilarity(M: WeightMatrix, method: str = "corrected_salton_1m", missing: str = "zero") -> DissimMatrix:
    """Dissimilarity between rows of ``M``.

    ``missing='zero'`` reads absent cells as 0. ``missing='pairwise'`` drops
    every term where either operand is absent (Euclidean methods only).
    """
    if method not in ROW_METHODS:
        raise NetworkError(f"unknown row dissimilarity {method!r}")
    if missing not in ("zero", "pairwise"):
        raise NetworkError(f"unknown missing-value policy {missing!r}")
    if not M.present.any(axis=1).all():
        raise NetworkError("a row has no present cell")
    if method in ("euclid", "corrected_euclid"):
        D = _pairwise(M, method, missing)
    else:
        if missing == "pairwise":
            raise NetworkError("pairwise deletion is only defined for Euclidean methods")
        S = np.clip(_salton(M.values, corrected=method.startswith("corrected")), -1.0, 1.0)
        D = 1.0 - S if method.endswith("_1m") else np.arccos(S) / math.pi
    return DissimMatrix(_symmetrize(D), M.labels, method)


def link_dissimilarity(M: WeightMatrix, method: str = "D1") -> DissimMatrix:
    """Dissimilarity from the reciprocal pair w[u, v], w[v, u].

    D1 = |w[u,v] - w[v,u]| / max(w[u,v], w[v,u]); pairs with no flow in
    either direction get 0.
    D2 = max(w[u,v] / R(u), w[v,u] / R(v)) with row sums R.
    """
    w = M.values
    if method == "D1":
        hi = np.maximum(w, w.T)
        with np.errstate(invalid="ignore", divide="ignore"):
            D = np.where(hi > 0, np.abs(w - w.T) / hi, 0.0)
    elif method == "D2":
        R = w.sum(axis=1)
        if (R <= 0).any():
            raise NetworkError(f"D2 undefined: node {int(np.flatnonzero(R <= 0)[0])} has no outflow")
        r = w / R[:, None]
        D = np.maximum(r, r.T)
    else:
        raise NetworkError(f"unknown link dissimilarity {method!r}")
    return DissimMatrix(_symmetrize(D), M.labels, method)
