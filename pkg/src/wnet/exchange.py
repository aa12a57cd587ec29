"""Text formats for passing matrices, dendrograms and orders between commands.

Matrix files are labeled CSV under a ``#wnet-matrix v1`` first line; absent
cells are written as ``NA``. Numbers use the shortest positional form that
reads back to the identical float.
"""

from __future__ import annotations

import csv
import io
from typing import Sequence

import numpy as np

from .cluster import Dendrogram
from .dissim import DissimMatrix
from .model import NetworkError, WeightMatrix
from .pajek import Source, _read_text, format_number

MATRIX_MAGIC = "#wnet-matrix v1"
DENDRO_MAGIC = "#wnet-dendrogram v1"
MISSING = "NA"


def write_matrix(M: WeightMatrix | DissimMatrix) -> str:
    if isinstance(M, DissimMatrix):
        M = WeightMatrix(M.values, np.ones_like(M.values, dtype=bool), M.labels)
    buf = io.StringIO()
    buf.write(MATRIX_MAGIC + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(M.labels))
    for i, lab in enumerate(M.labels):
        w.writerow([lab] + [format_number(x) if p else MISSING for x, p in zip(M.values[i], M.present[i])])
    return buf.getvalue()


def parse_matrix(text: str) -> WeightMatrix:
    lines = text.split("\n", 1)
    if lines[0].strip() != MATRIX_MAGIC:
        raise NetworkError(f"not a matrix file (expected {MATRIX_MAGIC!r} first line)")
    rows = [r for r in csv.reader(io.StringIO(lines[1] if len(lines) > 1 else "")) if r]
    if not rows:
        raise NetworkError("matrix file has no header row")
    labels = rows[0][1:]
    n = len(labels)
    if len(rows) - 1 != n:
        raise NetworkError(f"matrix has {n} columns but {len(rows) - 1} rows")
    values = np.zeros((n, n))
    present = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise NetworkError(f"matrix row {i + 1} has {len(row) - 1} cells, expected {n}")
        if row[0] != labels[i]:
            raise NetworkError(f"row label {row[0]!r} does not match column label {labels[i]!r}")
        for j, cell in enumerate(row[1:]):
            if cell == MISSING:
                continue
            try:
                values[i, j] = float(cell)
            except ValueError:
                raise NetworkError(f"matrix cell ({i + 1}, {j + 1}) is not numeric: {cell!r}") from None
            present[i, j] = True
    return WeightMatrix(values, present, tuple(labels))


def read_matrix(source: Source) -> WeightMatrix:
    return parse_matrix(_read_text(source))


def as_dissim(M: WeightMatrix, method: str = "") -> DissimMatrix:
    if not M.present.all():
        raise NetworkError("a dissimilarity matrix cannot have missing cells")
    return DissimMatrix(M.values, M.labels, method)


def write_dendrogram(d: Dendrogram) -> str:
    buf = io.StringIO()
    buf.write(DENDRO_MAGIC + "\n")
    w = csv.writer(buf, lineterminator="\n")
    for i, lab in enumerate(d.labels):
        w.writerow(["leaf", i, lab])
    for a, b, h in d.merges:
        w.writerow(["merge", a, b, repr(float(h))])
    return buf.getvalue()


def parse_dendrogram(text: str) -> Dendrogram:
    lines = text.split("\n", 1)
    if lines[0].strip() != DENDRO_MAGIC:
        raise NetworkError(f"not a dendrogram file (expected {DENDRO_MAGIC!r} first line)")
    labels, merges = [], []
    for row in csv.reader(io.StringIO(lines[1] if len(lines) > 1 else "")):
        if not row:
            continue
        if row[0] == "leaf":
            if int(row[1]) != len(labels):
                raise NetworkError("leaf rows must be numbered 0..n-1 in order")
            labels.append(row[2])
        elif row[0] == "merge":
            merges.append((int(row[1]), int(row[2]), float(row[3])))
        else:
            raise NetworkError(f"unknown dendrogram record {row[0]!r}")
    return Dendrogram(tuple(labels), tuple(merges))


def read_dendrogram(source: Source) -> Dendrogram:
    return parse_dendrogram(_read_text(source))


def write_order(order: Sequence[int], labels: Sequence[str]) -> str:
    return "".join(f"{labels[i]}\n" for i in order)


def read_order(source: Source, labels: Sequence[str]) -> list[int]:
    """Order file: one label (or 1-based index) per line."""
    pos = {lab: i for i, lab in enumerate(labels)}
    out = []
    for line in _read_text(source).split("\n"):
        tok = line.strip()
        if not tok:
            continue
        if tok in pos:
            out.append(pos[tok])
        elif tok.isdigit() and 1 <= int(tok) <= len(labels):
            out.append(int(tok) - 1)
        else:
            raise NetworkError(f"order entry {tok!r} matches no label")
    if sorted(out) != list(range(len(labels))):
        raise NetworkError("order file is not a permutation of the labels")
    return out
