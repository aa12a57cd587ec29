"""Report tables and the end-to-end analysis run used by ``wnet repro``."""

from __future__ import annotations

import csv
import io
import os
from pathlib import Path
from typing import Sequence

import numpy as np

from . import erasmus
from .cluster import Blockmodel, blockmodel, leaf_order, ward
from .cores import MODES, CoreDecomposition, core_expansion_dendrogram, ps_core_numbers
from .dissim import row_dissimilarity
from .exchange import write_dendrogram, write_matrix, write_order
from .hits import HitsResult, hits
from .model import Network, NetworkError, density, to_matrix, weight_range
from .normalize import activity
from .pajek import format_number, write_clu, write_net
from .render import dendrogram_svg, matrix_svg, skeleton_dot
from .skeleton import PathfinderParams, k_neighbors, pathfinder_network
from .transforms import power_transform, quantile_bins


def use_color(stream) -> bool:
    return not os.environ.get("WNET_NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()


def aligned(header: Sequence[str], rows: Sequence[Sequence[str]], color: bool = False) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]

    def fmt(cells):
        out = []
        for i, c in enumerate(cells):
            out.append(c.ljust(widths[i]) if i < 2 else c.rjust(widths[i]))
        return "  ".join(out).rstrip()

    head = fmt(header)
    if color:
        head = f"\x1b[1m{head}\x1b[0m"
    return "\n".join([head] + [fmt(r) for r in rows]) + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def info_text(net: Network) -> str:
    lo, hi = weight_range(net) if net.m else (float("nan"), float("nan"))
    M = to_matrix(net)
    off = ~np.eye(net.n, dtype=bool)
    missing = [(net.codes[u], net.codes[v]) for u, v in np.argwhere(off & ~M.present)]
    loops = sum(1 for s, t, _ in net.arcs if s == t)
    lines = [
        f"nodes: {net.n}",
        f"arcs: {net.m}",
        f"loops: {loops}",
        f"density: {density(net):.6f}",
        f"density_with_loops: {density(net, loops=True):.6f}",
        f"w_min: {format_number(lo)}",
        f"w_max: {format_number(hi)}",
        f"total_weight: {format_number(net.total_weight())}",
        f"missing_pairs: {len(missing)}",
    ]
    lines += [f"  {u} -> {v}" for u, v in missing[:50]]
    return "\n".join(lines) + "\n"


HITS_HEADER = ("label", "iso2", "wod", "wid", "hub", "aut", "qh", "qa")


def hits_rows(net: Network, res: HitsResult) -> list[list[str]]:
    def q(x):
        return "NA" if np.isnan(x) else f"{x:.3f}"

    return [
        [v.label, v.iso2 or "", format_number(res.wod[i]), format_number(res.wid[i]),
         f"{res.y[i]:.6f}", f"{res.x[i]:.6f}", q(res.qh[i]), q(res.qa[i])]
        for i, v in enumerate(net.nodes)
    ]


def pscores_rows(decs: Sequence[CoreDecomposition]) -> list[list[str]]:
    ranks = [d.ranking() for d in decs]
    rows = []
    for r in range(len(ranks[0])):
        row = [str(r + 1)]
        for d, rank in zip(decs, ranks):
            v = rank[r]
            row += [d.labels[v], format_number(d.core_number[v])]
        rows.append(row)
    return rows


def pscores_levels(dec: CoreDecomposition, top: int | None = None) -> str:
    """One line per level, innermost first: ``level: node node ...``."""
    groups: list[tuple[float, list[str]]] = []
    for v in dec.ranking():
        t = float(dec.core_number[v])
        if groups and groups[-1][0] == t:
            groups[-1][1].append(dec.labels[v])
        else:
            groups.append((t, [dec.labels[v]]))
    if top is not None:
        groups = groups[:top]
    return "".join(f"{format_number(t)}: {' '.join(names)}\n" for t, names in groups)


def blockmodel_text(bm: Blockmodel) -> str:
    header = ["block"] + list(bm.names)
    rows = []
    for i, name in enumerate(bm.names):
        rows.append([name] + ["NA" if np.isnan(x) else f"{x:.4f}" for x in bm.values[i]])
    return aligned(header, rows)


def repro(net: Network, out_dir: str | os.PathLike) -> list[Path]:
    """Run the whole analysis on ``net`` and write every artifact to ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def put(name: str, text: str):
        p = out / name
        p.write_text(text, encoding="utf-8", newline="\n")
        written.append(p)

    labels = net.codes
    put("info.txt", info_text(net))

    res = hits(net)
    put("table1.txt", aligned(HITS_HEADER, hits_rows(net, res)))
    put("table1.csv", to_csv(HITS_HEADER, hits_rows(net, res)))

    for k in (1, 2):
        sk = k_neighbors(net, k, "out")
        put(f"kneigh{k}.net", write_net(sk))
        put(f"kneigh{k}.dot", skeleton_dot(sk, name=f"{k}-neighbors"))
    pf = pathfinder_network(net, PathfinderParams())
    put("pathfinder.net", write_net(pf))
    put("pathfinder.dot", skeleton_dot(pf, name="pathfinder"))

    decs = [ps_core_numbers(net, m) for m in MODES]
    header = ["rank"] + [f"{c}{m}" for m in MODES for c in ("id_", "value_")]
    put("pscores.txt", aligned(header, pscores_rows(decs)))
    for dec in decs:
        put(f"pscores_{dec.mode}.svg", dendrogram_svg(core_expansion_dendrogram(dec), "tmax_minus_t",
                                                      t_max=float(dec.core_number.max())))

    M = to_matrix(net)
    put("matrix_alpha.svg", matrix_svg(M))

    Mp = power_transform(M, 0.1)
    D = row_dissimilarity(Mp, "corrected_salton_1m")
    dend = ward(D)
    order = leaf_order(dend)
    put("salton_dissim.csv", write_matrix(D))
    put("salton_dendrogram.txt", write_dendrogram(dend))
    put("salton_dendrogram.svg", dendrogram_svg(dend))
    put("salton_order.txt", write_order(order, labels))
    put("matrix_salton.svg", matrix_svg(Mp, order))
    put("matrix_salton_qbins.svg", matrix_svg(quantile_bins(M), order))

    A = activity(M)
    DA = row_dissimilarity(A, "corrected_euclid", missing="pairwise")
    dend_a = ward(DA)
    order_a = leaf_order(dend_a)
    put("activity.csv", write_matrix(A))
    put("balassa_dendrogram.txt", write_dendrogram(dend_a))
    put("balassa_dendrogram.svg", dendrogram_svg(dend_a))
    put("balassa_order.txt", write_order(order_a, labels))
    put("matrix_balassa.svg", matrix_svg(A, order_a, palette="diverging"))

    try:
        part = erasmus.block_partition(net)
    except NetworkError:
        part = None
    if part is not None:
        bm = blockmodel(A, part)
        put("blocks.clu", write_clu(part.clusters))
        put("blockmodel.txt", blockmodel_text(bm))
        block_order = sorted(range(net.n), key=lambda i: (part.clusters[i], order_a.index(i)))
        put("matrix_blocks.svg", matrix_svg(A, block_order, palette="diverging", partition=part))
    return written
