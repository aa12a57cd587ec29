"""Weighted directed network model and elementary statistics.

Nodes are addressed by their 0-based position everywhere in the Python API.
File formats (Pajek) use 1-based ids; the readers and writers translate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class NetworkError(ValueError):
    """Raised for invalid network data or unsupported operations."""


@dataclass(frozen=True)
class NodeRecord:
    label: str
    iso2: str | None = None
    population: int | None = None

    def __post_init__(self):
        if self.iso2 is not None and len(self.iso2) != 2:
            raise NetworkError(f"iso2 code must have 2 characters, got {self.iso2!r}")
        if self.population is not None and self.population < 0:
            raise NetworkError(f"negative population for {self.label!r}")

    @property
    def code(self) -> str:
        """Short display name: iso2 when known, else the label."""
        return self.iso2 if self.iso2 else self.label


@dataclass(frozen=True)
class Network:
    """Immutable weighted directed network.

    ``arcs`` holds ``(source, target, weight)`` triples with 0-based node
    indices. The tuple is stored sorted by ``(source, target)``; a pair that
    does not occur is a missing arc, which is different from a zero weight.
    """

    nodes: tuple[NodeRecord, ...]
    arcs: tuple[tuple[int, int, float], ...] = ()
    directed: bool = True

    def __post_init__(self):
        nodes = tuple(self.nodes)
        n = len(nodes)
        seen = set()
        clean = []
        for s, t, w in self.arcs:
            s, t, w = int(s), int(t), float(w)
            if not (0 <= s < n and 0 <= t < n):
                raise NetworkError(f"arc ({s}, {t}) refers to a node outside 0..{n - 1}")
            if (s, t) in seen:
                raise NetworkError(f"duplicate arc ({s}, {t})")
            if not np.isfinite(w) or w < 0:
                raise NetworkError(f"arc ({s}, {t}) has invalid weight {w}")
            seen.add((s, t))
            clean.append((s, t, w))
        clean.sort()
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "arcs", tuple(clean))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(v.label for v in self.nodes)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.nodes)

    @cached_property
    def source(self) -> np.ndarray:
        a = np.array([s for s, _, _ in self.arcs], dtype=np.intp)
        a.flags.writeable = False
        return a

    @cached_property
    def target(self) -> np.ndarray:
        a = np.array([t for _, t, _ in self.arcs], dtype=np.intp)
        a.flags.writeable = False
        return a

    @cached_property
    def weight(self) -> np.ndarray:
        a = np.array([w for _, _, w in self.arcs], dtype=float)
        a.flags.writeable = False
        return a

    def index(self, key: str) -> int:
        """Position of the node whose iso2 code or label equals ``key``."""
        for i, v in enumerate(self.nodes):
            if v.iso2 == key:
                return i
        for i, v in enumerate(self.nodes):
            if v.label == key:
                return i
        raise KeyError(key)

    def arc_weight(self, u: int, v: int) -> float | None:
        return self._arc_map.get((u, v))

    @cached_property
    def _arc_map(self) -> dict[tuple[int, int], float]:
        return {(s, t): w for s, t, w in self.arcs}

    def with_nodes(self, nodes: Sequence[NodeRecord]) -> "Network":
        if len(nodes) != self.n:
            raise NetworkError(f"expected {self.n} node records, got {len(nodes)}")
        return Network(tuple(nodes), self.arcs, self.directed)

    def total_weight(self) -> float:
        return float(self.weight.sum())


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Dense n x n value grid with an explicit mask of present cells.

    Absent cells always hold 0 in ``values``.
    """

    values: np.ndarray
    present: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        present = np.array(self.present, dtype=bool)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise NetworkError(f"weight matrix must be square, got shape {values.shape}")
        if present.shape != values.shape:
            raise NetworkError("presence mask shape does not match values")
        values[~present] = 0.0
        values.flags.writeable = False
        present.flags.writeable = False
        labels = tuple(self.labels) or tuple(str(i + 1) for i in range(values.shape[0]))
        if len(labels) != values.shape[0]:
            raise NetworkError("label count does not match matrix size")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "present", present)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def present_values(self) -> np.ndarray:
        return self.values[self.present]

    def replace(self, values=None, present=None) -> "WeightMatrix":
        return WeightMatrix(
            self.values if values is None else values,
            self.present if present is None else present,
            self.labels,
        )

    def masked(self, fill: float = np.nan) -> np.ndarray:
        """Copy of the values with absent cells set to ``fill``."""
        out = self.values.copy()
        out[~self.present] = fill
        return out

    def __eq__(self, other):
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.present, other.present)
            and np.array_equal(self.values, other.values)
        )


def weighted_degrees(net: Network, mode: str = "out") -> np.ndarray:
    out = np.bincount(net.source, weights=net.weight, minlength=net.n) if net.m else np.zeros(net.n)
    inn = np.bincount(net.target, weights=net.weight, minlength=net.n) if net.m else np.zeros(net.n)
    if mode == "out":
        return out
    if mode == "in":
        return inn
    if mode == "all":
        return out + inn
    raise NetworkError(f"unknown degree mode {mode!r}")


def density(net: Network, loops: bool = False) -> float:
    """Share of admissible ordered pairs that carry an arc.

    With ``loops=False`` the denominator is n(n-1) and loop arcs are not
    counted; with ``loops=True`` it is n^2 and all arcs count.
    """
    n = net.n
    if n < 2:
        raise NetworkError("density is undefined for fewer than 2 nodes")
    if loops:
        return net.m / (n * n)
    m = sum(1 for s, t, _ in net.arcs if s != t)
    return m / (n * (n - 1))


def weight_range(net: Network) -> tuple[float, float]:
    if net.m == 0:
        raise NetworkError("weight range of a network without arcs")
    return float(net.weight.min()), float(net.weight.max())


def to_matrix(net: Network) -> WeightMatrix:
    values = np.zeros((net.n, net.n))
    present = np.zeros((net.n, net.n), dtype=bool)
    values[net.source, net.target] = net.weight
    present[net.source, net.target] = True
    return WeightMatrix(values, present, net.codes)


def from_matrix(M: WeightMatrix, nodes: Sequence[NodeRecord] | None = None) -> Network:
    if nodes is None:
        nodes = [NodeRecord(lab) for lab in M.labels]
    rows, cols = np.nonzero(M.present)
    arcs = [(int(s), int(t), float(M.values[s, t])) for s, t in zip(rows, cols)]
    return Network(tuple(nodes), tuple(arcs))


def induced_subnetwork(net: Network, keep: Iterable[int]) -> Network:
    """Subnetwork on ``keep``; nodes are renumbered densely in original order.

    Node records are carried over unchanged, so labels identify the originals.
    """
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise NetworkError("cannot induce a subnetwork on an empty node set")
    if keep[0] < 0 or keep[-1] >= net.n:
        raise NetworkError("node index outside the network")
    new = {old: i for i, old in enumerate(keep)}
    arcs = [(new[s], new[t], w) for s, t, w in net.arcs if s in new and t in new]
    return Network(tuple(net.nodes[i] for i in keep), tuple(arcs), net.directed)
