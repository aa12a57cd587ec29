"""Link-reduction skeletons: closest k-neighbors and Pathfinder."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Network, NetworkError, WeightMatrix, to_matrix

EQUALITY_RTOL = 1e-9


@dataclass(frozen=True)
class PathfinderParams:
    r: float = math.inf
    q: int | None = None  # None means n - 1

    def __post_init__(self):
        if not self.r >= 1:
            raise NetworkError(f"Minkowski exponent r must be >= 1, got {self.r}")
        if self.q is not None and self.q < 2:
            raise NetworkError(f"maximum path length q must be >= 2, got {self.q}")


def k_neighbors(net: Network, k: int, direction: str = "out", loops: bool = False) -> Network:
    """Union over nodes of each node's k heaviest out- (or in-) arcs.

    Ties go to the smaller neighbor index. Loops are not candidates unless
    ``loops`` is set.
    """
    if k < 1:
        raise NetworkError(f"k must be >= 1, got {k}")
    if direction not in ("out", "in"):
        raise NetworkError(f"direction must be 'out' or 'in', got {direction!r}")
    by_node: dict[int, list[tuple[float, int, tuple]]] = {}
    for arc in net.arcs:
        s, t, w = arc
        if s == t and not loops:
            continue
        owner, other = (s, t) if direction == "out" else (t, s)
        by_node.setdefault(owner, []).append((-w, other, arc))
    kept = []
    for cands in by_node.values():
        cands.sort(key=lambda c: (c[0], c[1]))
        kept += [c[2] for c in cands[:k]]
    return Network(net.nodes, tuple(kept), net.directed)


def sim_to_dissim(M: WeightMatrix, method: str = "ratio", w_max: float | None = None) -> WeightMatrix:
    """Convert similarities to dissimilarities: w_max - w or w_max / w."""
    vals = M.present_values()
    if w_max is None:
        if vals.size == 0:
            raise NetworkError("no present cells to convert")
        w_max = float(vals.max())
    out = M.values.copy()
    if method == "subtract":
        out[M.present] = w_max - vals
    elif method == "ratio":
        if (vals <= 0).any():
            raise NetworkError("ratio conversion needs strictly positive weights")
        out[M.present] = w_max / vals
    else:
        raise NetworkError(f"unknown conversion {method!r}")
    return M.replace(values=out)


def minkowski(a, b, r: float):
    """Elementwise (a^r + b^r)^(1/r), scaled by max(a, b) to avoid overflow."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if math.isinf(r):
        return np.maximum(a, b)
    if r == 1:
        return a + b
    m = np.maximum(a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = m * ((a / m) ** r + (b / m) ** r) ** (1.0 / r)
    return np.where(np.isfinite(m) & (m > 0), s, m)


def path_weights(D: np.ndarray, r: float, q: int) -> np.ndarray:
    """Minimum Minkowski weight over walks of 1..q arcs (inf where none).

    With positive weights a walk never beats the simple path obtained by
    dropping its cycles, so this equals the minimum over simple paths.
    """
    best = D.copy()
    cur = D.copy()
    for _ in range(q - 1):
        # cur[u, t] composed with D[t, v], minimized over t
        cur = minkowski(cur[:, :, None], D[None, :, :], r).min(axis=1)
        best = np.minimum(best, cur)
    return best


def pathfinder(D: WeightMatrix, params: PathfinderParams = PathfinderParams()) -> np.ndarray:
    """Boolean mask of the arcs kept in PFnet(D, r, q).

    An arc is removed when some directed path of at most q arcs has a
    strictly smaller Minkowski weight; equality keeps it.
    """
    n = D.n
    q = n - 1 if params.q is None else params.q
    vals = D.present_values()
    if (vals < 0).any():
        raise NetworkError("Pathfinder needs non-negative dissimilarities")
    dist = np.where(D.present, D.values, np.inf)
    np.fill_diagonal(dist, np.inf)
    if n < 2:
        return D.present.copy()
    best = path_weights(dist, params.r, max(q, 1))
    keep = D.present & (D.values <= best * (1 + EQUALITY_RTOL))
    # loops are not links between distinct nodes; keep them as given
    keep[np.diag_indices(n)] = D.present[np.diag_indices(n)]
    return keep


def pathfinder_network(
    net: Network,
    params: PathfinderParams = PathfinderParams(),
    dissim: str = "ratio",
) -> Network:
    """PFnet of a similarity-weighted network; kept arcs retain original weights."""
    keep = pathfinder(sim_to_dissim(to_matrix(net), dissim), params)
    arcs = tuple(a for a in net.arcs if keep[a[0], a[1]] and a[0] != a[1])
    return Network(net.nodes, arcs, net.directed)
