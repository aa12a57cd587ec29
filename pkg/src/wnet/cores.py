"""Generalized Ps-cores (weighted-degree cores) of directed networks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cluster import Dendrogram
from .model import Network, NetworkError, to_matrix

MODES = ("all", "in", "out")


@dataclass(frozen=True, eq=False)
class CoreDecomposition:
    mode: str
    core_number: np.ndarray
    peel_order: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def levels(self) -> np.ndarray:
        return np.unique(self.core_number)

    def core(self, t: float) -> list[int]:
        """Nodes of the core at level t."""
        return [int(v) for v in np.flatnonzero(self.core_number >= t)]

    def ranking(self) -> list[int]:
        """Nodes from the innermost core outwards (reverse peel order)."""
        return list(reversed(self.peel_order))


def _degree_matrix(net: Network, mode: str) -> np.ndarray:
    W = to_matrix(net).values
    if mode == "out":
        return W
    if mode == "in":
        return W.T.copy()
    if mode == "all":
        return W + W.T
    raise NetworkError(f"unknown core mode {mode!r}; expected one of {MODES}")


def ps_core_numbers(net: Network, mode: str = "all") -> CoreDecomposition:
    """Core numbers by repeatedly removing a node of minimal remaining degree.

    The degree of v inside the remaining set C is sum_{u in C} S[v, u] where
    S is W (out), W^T (in) or W + W^T (all). Ties are removed smallest index
    first.
    """
    S = _degree_matrix(net, mode)
    if (S < 0).any():
        raise NetworkError("Ps-cores need non-negative weights")
    n = net.n
    deg = S.sum(axis=1)
    alive = np.ones(n, dtype=bool)
    core = np.zeros(n)
    order = []
    level = -np.inf
    for _ in range(n):
        cand = np.where(alive, deg, np.inf)
        v = int(np.argmin(cand))
        level = max(level, deg[v])
        core[v] = level
        order.append(v)
        alive[v] = False
        deg -= S[:, v]
    return CoreDecomposition(mode, core, tuple(order), net.codes)


def core_expansion_dendrogram(dec: CoreDecomposition) -> Dendrogram:
    """Chain dendrogram: nodes join the top core at height t_max - t."""
    order = dec.ranking()
    t_max = float(dec.core_number.max())
    n = len(order)
    merges = []
    current = order[0]
    for i, v in enumerate(order[1:]):
        merges.append((current, v, t_max - float(dec.core_number[v])))
        current = n + i
    return Dendrogram(dec.labels, tuple(merges))
