"""Readers and writers for Pajek companion files and the raw flows CSV."""

from __future__ import annotations

import csv
import io
import os
import re
import warnings
from collections import OrderedDict
from typing import IO, Sequence, Union

import numpy as np

from .model import Network, NetworkError, NodeRecord

Source = Union[str, os.PathLike, IO[str]]


class PajekFormatError(NetworkError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8-sig")
    else:
        with open(source, encoding="utf-8-sig", newline=None) as f:
            text = f.read()
    # universal newlines are not applied to file objects opened by callers
    return text.lstrip("﻿").replace("\r\n", "\n").replace("\r", "\n")


def _lines(text: str):
    """Yield (line number, stripped line) skipping blanks and % comments."""
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield no, line


def format_number(x: float) -> str:
    """Shortest round-tripping positional representation (no exponent)."""
    x = float(x)
    if x.is_integer():
        return str(int(x))
    return np.format_float_positional(x, unique=True, trim="-")


_VERTEX = re.compile(r'^(\d+)\s+(?:"([^"]*)"|(\S+))(.*)$')
_HEADER = re.compile(r"^\*vertices\s+(\d+)(?:\s+\d+)?\s*$", re.IGNORECASE)


def _parse_header(lines, what: str) -> int:
    try:
        no, line = next(lines)
    except StopIteration:
        raise PajekFormatError(f"empty {what} file") from None
    while line.lower().startswith("*network"):
        no, line = next(lines)
    m = _HEADER.match(line)
    if not m:
        raise PajekFormatError(f"expected '*Vertices n' header, got {line!r}", no)
    return int(m.group(1))


def _parse_weight(token: str, no: int) -> float:
    try:
        w = float(token)
    except ValueError:
        raise PajekFormatError(f"non-numeric weight {token!r}", no) from None
    if not np.isfinite(w):
        raise PajekFormatError(f"non-finite weight {token!r}", no)
    if w < 0:
        raise PajekFormatError(f"negative weight {token!r}", no)
    return w


def read_net(source: Source) -> Network:
    """Parse a Pajek ``.net`` file into a :class:`Network`.

    Duplicate arcs are summed; ``*Edges`` lines become two reciprocal arcs.
    Both cases emit a warning.
    """
    lines = _lines(_read_text(source))
    n = _parse_header(lines, "network")
    labels: dict[int, str] = {}
    weights: OrderedDict[tuple[int, int], float] = OrderedDict()
    section = "vertices"
    duplicates = 0
    edges_seen = False

    def add(s, t, w):
        nonlocal duplicates
        if (s, t) in weights:
            duplicates += 1
            weights[(s, t)] += w
        else:
            weights[(s, t)] = w

    for no, line in lines:
        if line.startswith("*"):
            key = line.split()[0].lower()
            if key == "*arcs":
                section = "arcs"
            elif key == "*edges":
                section = "edges"
            else:
                raise PajekFormatError(f"unsupported section {line.split()[0]!r}", no)
            continue
        if section == "vertices":
            m = _VERTEX.match(line)
            if not m:
                raise PajekFormatError(f"malformed vertex line {line!r}", no)
            vid = int(m.group(1))
            if not 1 <= vid <= n:
                raise PajekFormatError(f"vertex id {vid} outside 1..{n}", no)
            if vid in labels:
                raise PajekFormatError(f"vertex id {vid} defined twice", no)
            labels[vid] = m.group(2) if m.group(2) is not None else m.group(3)
            continue
        parts = line.split()
        if len(parts) < 2:
            raise PajekFormatError(f"malformed link line {line!r}", no)
        try:
            s, t = int(parts[0]), int(parts[1])
        except ValueError:
            raise PajekFormatError(f"non-integer node id in {line!r}", no) from None
        for vid in (s, t):
            if not 1 <= vid <= n:
                raise PajekFormatError(f"node id {vid} outside 1..{n}", no)
        w = _parse_weight(parts[2], no) if len(parts) >= 3 else 1.0
        add(s - 1, t - 1, w)
        if section == "edges":
            edges_seen = True
            if s != t:
                add(t - 1, s - 1, w)

    if edges_seen:
        warnings.warn("*Edges lines were converted to pairs of reciprocal arcs", stacklevel=2)
    if duplicates:
        warnings.warn(f"{duplicates} duplicate arc line(s) summed", stacklevel=2)
    nodes = tuple(NodeRecord(labels.get(i, str(i))) for i in range(1, n + 1))
    arcs = tuple((s, t, w) for (s, t), w in weights.items())
    return Network(nodes, arcs)


def _quote(label: str) -> str:
    if '"' in label:
        raise NetworkError(f"label {label!r} contains a double quote")
    return f'"{label}"'


def write_net(net: Network) -> str:
    out = [f"*Vertices {net.n}"]
    out += [f"{i} {_quote(v.label)}" for i, v in enumerate(net.nodes, start=1)]
    out.append("*Arcs")
    out += [f"{s + 1} {t + 1} {format_number(w)}" for s, t, w in net.arcs]
    return "\n".join(out) + "\n"


def _read_column(source: Source, what: str) -> tuple[list[tuple[int, str]], int]:
    lines = _lines(_read_text(source))
    n = _parse_header(lines, what)
    body = list(lines)
    if not body:
        raise PajekFormatError(f"{what} file has no values")
    if len(body) != n:
        raise PajekFormatError(f"header announces {n} values but {len(body)} found")
    return body, n


def read_vec(source: Source) -> np.ndarray:
    body, _ = _read_column(source, "vector")
    out = []
    for no, line in body:
        try:
            out.append(float(line.split()[0]))
        except ValueError:
            raise PajekFormatError(f"non-numeric value {line!r}", no) from None
    return np.array(out)


def write_vec(values: Sequence[float]) -> str:
    return f"*Vertices {len(values)}\n" + "".join(f"{format_number(v)}\n" for v in values)


def read_clu(source: Source) -> tuple[int, ...]:
    body, _ = _read_column(source, "partition")
    out = []
    for no, line in body:
        tok = line.split()[0]
        try:
            c = int(tok)
        except ValueError:
            raise PajekFormatError(f"non-integer cluster {tok!r}", no) from None
        if c < 1:
            raise PajekFormatError(f"cluster ids must be >= 1, got {c}", no)
        out.append(c)
    return tuple(out)


def write_clu(clusters: Sequence[int]) -> str:
    return f"*Vertices {len(clusters)}\n" + "".join(f"{int(c)}\n" for c in clusters)


def read_nam(source: Source) -> list[str]:
    """Read a name list: either ``id "label"`` lines or one bare label per line."""
    body, _ = _read_column(source, "names")
    out = []
    for no, line in body:
        m = _VERTEX.match(line)
        if m:
            out.append(m.group(2) if m.group(2) is not None else m.group(3))
        elif line.startswith('"') and line.endswith('"') and len(line) >= 2:
            out.append(line[1:-1])
        else:
            out.append(line)
    return out


def with_iso2(net: Network, codes: Sequence[str]) -> Network:
    if len(codes) != net.n:
        raise NetworkError(f"{len(codes)} codes for {net.n} nodes")
    return net.with_nodes(
        [NodeRecord(v.label, c, v.population) for v, c in zip(net.nodes, codes)]
    )


def with_population(net: Network, pop: Sequence[float]) -> Network:
    if len(pop) != net.n:
        raise NetworkError(f"{len(pop)} population values for {net.n} nodes")
    recs = []
    for v, p in zip(net.nodes, pop):
        if float(p) != int(p):
            raise NetworkError(f"population of {v.label!r} is not an integer: {p}")
        recs.append(NodeRecord(v.label, v.iso2, int(p)))
    return net.with_nodes(recs)


def _detect_delimiter(sample: str) -> str:
    try:
        return csv.Sniffer().sniff(sample, delimiters=",;\t").delimiter
    except csv.Error:
        return ","


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def ingest_csv(
    source: Source,
    columns: Sequence[int | str] = (0, 1, 2),
    delimiter: str | None = None,
) -> Network:
    """Build a network from sender, receiver, count rows.

    ``columns`` names or indexes the three columns. Named columns require a
    header row; with integer columns a header is detected when the first
    row's count cell is not numeric. Nodes are ordered alphabetically.
    """
    text = _read_text(source)
    if delimiter is None:
        delimiter = _detect_delimiter(text[:4096])
    rows = [r for r in csv.reader(io.StringIO(text), delimiter=delimiter) if any(c.strip() for c in r)]
    if not rows:
        raise NetworkError("CSV input is empty")
    if len(columns) != 3:
        raise NetworkError("column map needs exactly three entries")

    header = None
    if any(isinstance(c, str) for c in columns):
        header = [c.strip() for c in rows[0]]
        idx = []
        for c in columns:
            if isinstance(c, str):
                if c not in header:
                    raise NetworkError(f"missing column {c!r}; header is {header}")
                idx.append(header.index(c))
            else:
                idx.append(int(c))
        body = rows[1:]
    else:
        idx = [int(c) for c in columns]
        body = rows
        if len(rows[0]) > max(idx) and not _is_number(rows[0][idx[2]].strip()):
            body = rows[1:]
    first_line = len(rows) - len(body) + 1

    counts: OrderedDict[tuple[str, str], float] = OrderedDict()
    for no, row in enumerate(body, start=first_line):
        if len(row) <= max(idx):
            raise NetworkError(f"row {no}: missing column (have {len(row)})")
        s, t, c = (row[i].strip() for i in idx)
        try:
            w = float(c.replace(" ", ""))
        except ValueError:
            raise NetworkError(f"row {no}: non-numeric count {c!r}") from None
        if not np.isfinite(w) or w < 0:
            raise NetworkError(f"row {no}: invalid count {c!r}")
        counts[(s, t)] = counts.get((s, t), 0.0) + w

    names = list(OrderedDict.fromkeys(x for pair in counts for x in pair))
    if len(names) < 2:
        raise NetworkError("CSV must mention at least 2 distinct countries")
    names.sort()
    pos = {name: i for i, name in enumerate(names)}
    arcs = tuple((pos[s], pos[t], w) for (s, t), w in counts.items())
    return Network(tuple(NodeRecord(name) for name in names), arcs)
