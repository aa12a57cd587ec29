"""SVG matrix and dendrogram pictures, Graphviz DOT skeletons.

Output is plain text and fully deterministic for identical input.
"""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .cluster import Dendrogram, Partition, leaf_order
from .model import Network, NetworkError, WeightMatrix

MISSING_COLOR = "#ffff00"
CELL = 12
LABEL_SPACE = 40


def _hex(r: float, g: float, b: float) -> str:
    return "#{:02x}{:02x}{:02x}".format(*(int(round(min(max(c, 0), 255))) for c in (r, g, b)))


def grey_color(v: float, lo: float, hi: float) -> str:
    """Linear ramp from white (lo) to black (hi)."""
    t = 0.0 if hi == lo else (v - lo) / (hi - lo)
    g = 255 * (1 - t)
    return _hex(g, g, g)


def diverging_color(v: float, limit: float) -> str:
    """Blue for negative, white at 0, red for positive; symmetric about 0."""
    t = 0.0 if limit == 0 else min(abs(v) / limit, 1.0)
    fade = 255 * (1 - t)
    if v > 0:
        return _hex(255, fade, fade)
    if v < 0:
        return _hex(fade, fade, 255)
    return "#ffffff"


def _check_order(order, n):
    order = list(range(n)) if order is None else [int(i) for i in order]
    if sorted(order) != list(range(n)):
        raise NetworkError("order is not a permutation of the matrix rows")
    return order


def _num(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def matrix_svg(
    M: WeightMatrix,
    order: Sequence[int] | None = None,
    palette: str = "grey",
    partition: Partition | None = None,
    labels: Sequence[str] | None = None,
) -> str:
    n = M.n
    order = _check_order(order, n)
    labels = list(labels) if labels is not None else list(M.labels)
    vals = M.present_values()
    if palette == "grey":
        lo, hi = (float(vals.min()), float(vals.max())) if vals.size else (0.0, 0.0)
        color = lambda v: grey_color(v, lo, hi)  # noqa: E731
    elif palette == "diverging":
        limit = float(np.abs(vals).max()) if vals.size else 0.0
        color = lambda v: diverging_color(v, limit)  # noqa: E731
    else:
        raise NetworkError(f"unknown palette {palette!r}")

    size = LABEL_SPACE + n * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="8">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for i, u in enumerate(order):
        y = LABEL_SPACE + i * CELL
        lab = escape(labels[u])
        out.append(f'<text x="{LABEL_SPACE - 3}" y="{y + CELL - 3}" text-anchor="end">{lab}</text>')
        x = LABEL_SPACE + i * CELL + CELL - 3
        out.append(
            f'<text x="{x}" y="{LABEL_SPACE - 3}" transform="rotate(-90 {x} {LABEL_SPACE - 3})">{lab}</text>'
        )
    for i, u in enumerate(order):
        for j, v in enumerate(order):
            fill = color(M.values[u, v]) if M.present[u, v] else MISSING_COLOR
            cls = "cell" if M.present[u, v] else "missing"
            out.append(
                f'<rect class="{cls}" data-row="{u}" data-col="{v}" x="{LABEL_SPACE + j * CELL}" '
                f'y="{LABEL_SPACE + i * CELL}" width="{CELL}" height="{CELL}" fill="{fill}" '
                f'stroke="#cccccc" stroke-width="0.25"/>'
            )
    if partition is not None:
        if len(partition.clusters) != n:
            raise NetworkError("partition size does not match matrix")
        for i in range(1, n):
            if partition.clusters[order[i]] != partition.clusters[order[i - 1]]:
                p = LABEL_SPACE + i * CELL
                out.append(f'<line class="block" x1="{LABEL_SPACE}" y1="{p}" x2="{size}" y2="{p}" stroke="#000000" stroke-width="1.5"/>')
                out.append(f'<line class="block" x1="{p}" y1="{LABEL_SPACE}" x2="{p}" y2="{size}" stroke="#000000" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def dendrogram_svg(
    d: Dendrogram,
    heights: str = "raw",
    t_max: float | None = None,
    labels: Sequence[str] | None = None,
) -> str:
    """Rectilinear dendrogram, root at the top, leaves in leaf order.

    With ``heights='tmax_minus_t'`` each merge is annotated with its core
    level t = t_max - height (``t_max`` defaults to the largest height,
    which is right when the innermost core sits at height 0).
    """
    if heights not in ("raw", "tmax_minus_t"):
        raise NetworkError(f"unknown height mode {heights!r}")
    labels = list(labels) if labels is not None else list(d.labels)
    order = leaf_order(d)
    n = d.n
    step = 14
    plot_h = 200.0
    top, left = 20.0, 50.0
    width = left + n * step + 20
    height = top + plot_h + 60
    hmax = max((h for _, _, h in d.merges), default=0.0) or 1.0
    if t_max is None:
        t_max = hmax

    def ypos(h):
        return top + plot_h * (1 - h / hmax)

    xs: dict[int, float] = {leaf: left + i * step + step / 2 for i, leaf in enumerate(order)}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" height="{_num(height)}" '
        f'font-family="sans-serif" font-size="8">',
        f'<line x1="{_num(left - 5)}" y1="{_num(top)}" x2="{_num(left - 5)}" y2="{_num(top + plot_h)}" stroke="#000000"/>',
    ]
    for frac in (0.0, 0.5, 1.0):
        h = hmax * frac
        tick = h if heights == "raw" else t_max - h
        out.append(f'<text x="{_num(left - 8)}" y="{_num(ypos(h) + 3)}" text-anchor="end">{_num(tick)}</text>')
    for i, (a, b, h) in enumerate(d.merges):
        node = n + i
        xa, xb = xs[a], xs[b]
        ya, yb, y = ypos(d.height(a)), ypos(d.height(b)), ypos(h)
        xs[node] = (xa + xb) / 2
        out.append(
            f'<path class="merge" data-node="{node}" data-height="{h!r}" '
            f'd="M{_num(xa)},{_num(ya)} V{_num(y)} H{_num(xb)} V{_num(yb)}" fill="none" stroke="#000000"/>'
        )
        if heights == "tmax_minus_t":
            out.append(f'<text class="level" x="{_num(xs[node])}" y="{_num(y - 2)}" text-anchor="middle">{_num(t_max - h)}</text>')
    for leaf in order:
        x = xs[leaf]
        yl = top + plot_h + 5
        out.append(
            f'<text class="leaf" x="{_num(x)}" y="{_num(yl)}" transform="rotate(90 {_num(x)} {_num(yl)})">'
            f"{escape(labels[leaf])}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def skeleton_dot(net: Network, power: float = 0.1, max_width: float = 5.0, name: str = "skeleton") -> str:
    """DOT digraph with pen widths proportional to w**power."""
    lines = [f'digraph "{name}" {{', "  node [shape=ellipse];"]
    for i, v in enumerate(net.nodes):
        lines.append(f'  n{i + 1} [label="{v.code}"];')
    if net.m:
        tw = net.weight**power
        top = tw.max() or 1.0
        for (s, t, w), x in zip(net.arcs, tw):
            pen = max_width * x / top
            lines.append(f'  n{s + 1} -> n{t + 1} [tooltip="{w:g}", penwidth="{pen:.3f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
