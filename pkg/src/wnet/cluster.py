"""Ward clustering, dendrogram seriation, partitions and blockmodels.

Dendrograms follow the usual linkage numbering: leaves are 0..n-1 and the
i-th merge creates cluster n + i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dissim import DissimMatrix
from .model import NetworkError, WeightMatrix


@dataclass(frozen=True)
class Dendrogram:
    labels: tuple[str, ...]
    merges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        n = len(self.labels)
        merges = tuple((int(a), int(b), float(h)) for a, b, h in self.merges)
        if n == 0:
            raise NetworkError("dendrogram without leaves")
        if len(merges) != n - 1:
            raise NetworkError(f"{n} leaves need {n - 1} merges, got {len(merges)}")
        used = set()
        prev = -np.inf
        for i, (a, b, h) in enumerate(merges):
            for c in (a, b):
                if not 0 <= c < n + i or c in used:
                    raise NetworkError(f"merge {i} uses invalid or consumed cluster {c}")
                used.add(c)
            if a == b:
                raise NetworkError(f"merge {i} joins cluster {a} with itself")
            if h < prev:
                raise NetworkError(f"merge heights must be non-decreasing (merge {i})")
            prev = h
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "merges", merges)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def root(self) -> int:
        return 2 * self.n - 2

    def children(self, node: int) -> tuple[int, int]:
        a, b, _ = self.merges[node - self.n]
        return a, b

    def height(self, node: int) -> float:
        return 0.0 if node < self.n else self.merges[node - self.n][2]

    def leaves(self, node: int) -> list[int]:
        out = []
        stack = [node]
        while stack:
            c = stack.pop()
            if c < self.n:
                out.append(c)
            else:
                a, b = self.children(c)
                stack += [b, a]
        return out


@dataclass(frozen=True)
class Partition:
    clusters: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        clusters = tuple(int(c) for c in self.clusters)
        if not clusters:
            raise NetworkError("empty partition")
        k = max(clusters)
        if min(clusters) < 1 or set(clusters) != set(range(1, k + 1)):
            raise NetworkError("cluster ids must be dense 1..k")
        if self.names and len(self.names) != k:
            raise NetworkError(f"{len(self.names)} names for {k} clusters")
        object.__setattr__(self, "clusters", clusters)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def k(self) -> int:
        return max(self.clusters)

    def members(self, c: int) -> list[int]:
        return [i for i, ci in enumerate(self.clusters) if ci == c]

    def name(self, c: int) -> str:
        return self.names[c - 1] if self.names else str(c)


def _check_dissimilarity(D: np.ndarray):
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise NetworkError("dissimilarity matrix must be square")
    if not np.allclose(D, D.T, rtol=1e-12, atol=1e-12):
        raise NetworkError("dissimilarity matrix is not symmetric")
    if (np.diag(D) < 0).any():
        raise NetworkError("dissimilarity matrix has a negative diagonal")
    if not np.isfinite(D).all():
        raise NetworkError("dissimilarity matrix has non-finite entries")


def ward(D: DissimMatrix | np.ndarray, labels: Sequence[str] | None = None) -> Dendrogram:
    """Agglomerative Ward clustering via the Lance-Williams update.

    Dissimilarities are used as given (no squaring). Among equally close
    pairs the one with the smallest cluster ids wins; the smaller id becomes
    the left child.
    """
    if isinstance(D, DissimMatrix):
        labels = D.labels if labels is None else labels
        D = D.values
    D = np.asarray(D, dtype=float)
    _check_dissimilarity(D)
    n = D.shape[0]
    labels = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n))

    size = 2 * n - 1
    dist = np.full((size, size), np.inf)
    dist[:n, :n] = D
    count = np.zeros(size)
    count[:n] = 1
    active = list(range(n))
    merges = []
    for step in range(n - 1):
        best = None
        for ia, a in enumerate(active):
            for b in active[ia + 1:]:
                d = dist[a, b]
                if best is None or d < best[0]:
                    best = (d, a, b)
        h, a, b = best
        new = n + step
        na, nb = count[a], count[b]
        for c in active:
            if c in (a, b):
                continue
            nc = count[c]
            d = ((na + nc) * dist[a, c] + (nb + nc) * dist[b, c] - nc * h) / (na + nb + nc)
            dist[new, c] = dist[c, new] = d
        count[new] = na + nb
        active.remove(a)
        active.remove(b)
        active.append(new)
        merges.append((a, b, h))
    return Dendrogram(labels, tuple(merges))


def leaf_order(d: Dendrogram) -> list[int]:
    return d.leaves(d.root)


def swap_subtree(d: Dendrogram, node: int) -> Dendrogram:
    """Exchange the children of internal cluster ``node`` (n..2n-2)."""
    if not d.n <= node <= d.root:
        raise NetworkError(f"internal node id {node} outside {d.n}..{d.root}")
    merges = list(d.merges)
    a, b, h = merges[node - d.n]
    merges[node - d.n] = (b, a, h)
    return Dendrogram(d.labels, tuple(merges))


def apply_swaps(d: Dendrogram, nodes: Iterable[int]) -> Dendrogram:
    for node in nodes:
        d = swap_subtree(d, node)
    return d


def cut(d: Dendrogram, k: int) -> Partition:
    """Partition into k clusters by undoing the k-1 last merges.

    Cluster ids follow first appearance along the leaf order.
    """
    if not 1 <= k <= d.n:
        raise NetworkError(f"k must be in 1..{d.n}, got {k}")
    parent = list(range(2 * d.n - 1))

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for i, (a, b, _) in enumerate(d.merges[: d.n - k]):
        parent[find(a)] = d.n + i
        parent[find(b)] = d.n + i
    ids: dict[int, int] = {}
    clusters = [0] * d.n
    for leaf in leaf_order(d):
        r = find(leaf)
        ids.setdefault(r, len(ids) + 1)
        clusters[leaf] = ids[r]
    return Partition(tuple(clusters))


@dataclass(frozen=True, eq=False)
class Blockmodel:
    values: np.ndarray  # k x k block means, NaN where the block has no present cell
    counts: np.ndarray  # k x k number of present cells
    names: tuple[str, ...]


def blockmodel(M: WeightMatrix, p: Partition) -> Blockmodel:
    if len(p.clusters) != M.n:
        raise NetworkError(f"partition covers {len(p.clusters)} nodes, matrix has {M.n}")
    k = p.k
    cl = np.array(p.clusters) - 1
    onehot = np.zeros((M.n, k))
    onehot[np.arange(M.n), cl] = 1
    sums = onehot.T @ np.where(M.present, M.values, 0.0) @ onehot
    counts = onehot.T @ M.present.astype(float) @ onehot
    with np.errstate(invalid="ignore", divide="ignore"):
        values = np.where(counts > 0, sums / counts, np.nan)
    names = tuple(p.name(c) for c in range(1, k + 1))
    return Blockmodel(values, counts.astype(int), names)
