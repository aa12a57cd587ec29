"""Command-line entry point: ``wnet <subcommand> ...``.

Exit status is 0 on success, 1 on data errors and 2 on usage errors.
Every input argument accepts a path or ``-`` for standard input.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
import warnings
from pathlib import Path

from . import erasmus
from .cluster import Partition, apply_swaps, blockmodel, cut, leaf_order, ward
from .cores import MODES, core_expansion_dendrogram, ps_core_numbers
from .dissim import LINK_METHODS, ROW_METHODS, link_dissimilarity, row_dissimilarity
from .exchange import (
    MATRIX_MAGIC,
    as_dissim,
    parse_dendrogram,
    parse_matrix,
    read_order,
    write_dendrogram,
    write_matrix,
    write_order,
)
from .hits import hits
from .model import Network, NetworkError, WeightMatrix, from_matrix, to_matrix
from .normalize import activity, balassa
from .pajek import _read_text, ingest_csv, read_clu, read_nam, read_net, with_iso2, write_clu, write_net
from .pipeline import (
    HITS_HEADER,
    aligned,
    blockmodel_text,
    hits_rows,
    info_text,
    pscores_levels,
    pscores_rows,
    repro,
    to_csv,
    use_color,
)
from .render import dendrogram_svg, matrix_svg, skeleton_dot
from .skeleton import PathfinderParams, k_neighbors, pathfinder_network
from .transforms import log_transform, power_transform, quantile_bins


def _text(path: str) -> str:
    if path == "-":
        return _read_text(sys.stdin)
    return _read_text(path)


def load_network(path: str) -> Network:
    text = _text(path)
    head = text.lstrip()
    if head.startswith(MATRIX_MAGIC):
        return from_matrix(parse_matrix(head))
    if head.startswith("*") or head.startswith("%"):
        return erasmus.with_known_codes(read_net(io.StringIO(text)))
    return ingest_csv(io.StringIO(text))


def load_matrix(path: str) -> WeightMatrix:
    text = _text(path)
    if text.lstrip().startswith(MATRIX_MAGIC):
        return parse_matrix(text.lstrip())
    return to_matrix(read_net(io.StringIO(text)) if text.lstrip()[:1] in "*%" else ingest_csv(io.StringIO(text)))


def emit(args, text: str):
    if getattr(args, "out", None) and args.out != "-":
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _float_or_inf(s: str) -> float:
    return math.inf if s.lower() in ("inf", "infinity") else float(s)


def cmd_info(args):
    emit(args, info_text(load_network(args.input)))


def cmd_ingest(args):
    cols = [int(c) if c.isdigit() else c for c in args.columns.split(",")]
    net = ingest_csv(io.StringIO(_text(args.input)), cols, args.delimiter)
    if args.nam:
        net = with_iso2(net, read_nam(args.nam))
    emit(args, write_net(net))


def cmd_transform(args):
    M = load_matrix(args.input)
    if args.power is not None:
        M = power_transform(M, args.power)
    elif args.log:
        M = log_transform(M)
    else:
        M = quantile_bins(M)
    emit(args, write_matrix(M))


def cmd_hits(args):
    net = load_network(args.input)
    if args.nam:
        net = with_iso2(net, read_nam(args.nam))
    res = hits(net, tol=args.tol, max_iter=args.max_iter)
    rows = hits_rows(net, res)
    if args.format == "csv":
        emit(args, to_csv(HITS_HEADER, rows))
    else:
        emit(args, aligned(HITS_HEADER, rows, color=use_color(sys.stdout) and not args.out))
    if not res.converged:
        print(f"warning: HITS stopped after {res.iterations} iterations without converging", file=sys.stderr)


def _emit_network(args, net: Network, name: str):
    emit(args, skeleton_dot(net, name=name) if args.format == "dot" else write_net(net))


def cmd_kneigh(args):
    net = load_network(args.input)
    _emit_network(args, k_neighbors(net, args.k, args.dir), f"{args.k}-neighbors")


def cmd_pathfinder(args):
    net = load_network(args.input)
    params = PathfinderParams(args.r, args.q)
    _emit_network(args, pathfinder_network(net, params, args.dissim), "pathfinder")


def cmd_pscores(args):
    net = load_network(args.input)
    if args.nam:
        net = with_iso2(net, read_nam(args.nam))
    if args.mode:
        dec = ps_core_numbers(net, args.mode)
        emit(args, pscores_levels(dec, args.top))
        if args.svg:
            d = core_expansion_dendrogram(dec)
            Path(args.svg).write_text(dendrogram_svg(d, "tmax_minus_t", t_max=float(dec.core_number.max())), encoding="utf-8")
    else:
        decs = [ps_core_numbers(net, m) for m in MODES]
        rows = pscores_rows(decs)
        if args.top:
            rows = rows[: args.top]
        header = ["rank"] + [f"{c}{m}" for m in MODES for c in ("id_", "value_")]
        emit(args, aligned(header, rows))


def cmd_dissim(args):
    M = load_matrix(args.input)
    if args.power is not None:
        M = power_transform(M, args.power)
    if args.method in LINK_METHODS:
        D = link_dissimilarity(M, args.method)
    else:
        D = row_dissimilarity(M, args.method, missing=args.missing)
    emit(args, write_matrix(D))


def cmd_balassa(args):
    M = load_matrix(args.input)
    emit(args, write_matrix(activity(M) if args.log2 else balassa(M)))


def _read_swaps(path: str) -> list[int]:
    out = []
    for line in _text(path).split("\n"):
        line = line.split("#", 1)[0]
        out += [int(tok) for tok in line.replace(",", " ").split()]
    return out


def cmd_cluster(args):
    D = as_dissim(load_matrix(args.input))
    d = ward(D)
    if args.swaps:
        d = apply_swaps(d, _read_swaps(args.swaps))
    emit(args, write_dendrogram(d))
    if args.order:
        Path(args.order).write_text(write_order(leaf_order(d), d.labels), encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(dendrogram_svg(d), encoding="utf-8")
    if args.cut:
        p = cut(d, args.cut)
        if args.clu:
            Path(args.clu).write_text(write_clu(p.clusters), encoding="utf-8")
        else:
            sys.stderr.write(write_clu(p.clusters))


def _partition(path: str, names: str | None) -> Partition:
    clusters = read_clu(io.StringIO(_text(path)))
    return Partition(clusters, tuple(names.split(",")) if names else ())


def cmd_blockmodel(args):
    M = load_matrix(args.input)
    emit(args, blockmodel_text(blockmodel(M, _partition(args.clu, args.names))))


def cmd_matrix(args):
    M = load_matrix(args.input)
    order = None
    if args.order:
        order = read_order(io.StringIO(_text(args.order)), M.labels)
    elif args.dendrogram:
        d = parse_dendrogram(_text(args.dendrogram))
        if d.labels != M.labels:
            raise NetworkError("dendrogram leaves do not match matrix labels")
        order = leaf_order(d)
    part = _partition(args.clu, None) if args.clu else None
    emit(args, matrix_svg(M, order, args.palette, part))


def cmd_dendro(args):
    d = parse_dendrogram(_text(args.input))
    emit(args, dendrogram_svg(d, args.heights, args.tmax))


def cmd_dot(args):
    emit(args, skeleton_dot(load_network(args.input), power=args.power))


def cmd_repro(args):
    data = Path(args.data) if args.data else erasmus.find_data_dir()
    if data is None:
        raise NetworkError("Erasmus data not found; pass --data DIR or set WNET_ERASMUS_DATA")
    net = erasmus.load(data)
    for p in repro(net, args.out):
        print(p, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wnet", description="Exploratory analysis of weighted directed networks.")
    p.add_argument("--seedless", action="store_true", help="accepted for scripts; no command uses randomness")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, input_help="input file or -", out_help="output file (default: standard output)"):
        sp = sub.add_parser(name, help=help)
        if input_help:
            sp.add_argument("input", help=input_help)
        if out_help:
            sp.add_argument("--out", "-o", help=out_help)
        sp.set_defaults(func=func)
        return sp

    add("info", cmd_info, "basic network statistics")

    sp = add("ingest", cmd_ingest, "convert a flows CSV into a Pajek network", "CSV file or -")
    sp.add_argument("--columns", default="0,1,2", help="sender,receiver,count as names or 0-based indexes")
    sp.add_argument("--delimiter", help="force the field delimiter")
    sp.add_argument("--nam", help="names file with iso2 codes")

    sp = add("transform", cmd_transform, "monotone weight transformation")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--power", type=float)
    g.add_argument("--log", action="store_true")
    g.add_argument("--qbins", action="store_true")

    sp = add("hits", cmd_hits, "hubs, authorities, hubness and authorityness")
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--max-iter", type=int, default=10000)
    sp.add_argument("--nam", help="names file with iso2 codes")

    sp = add("kneigh", cmd_kneigh, "closest k-neighbors skeleton")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--dir", choices=("out", "in"), default="out")
    sp.add_argument("--format", choices=("net", "dot"), default="net")

    sp = add("pathfinder", cmd_pathfinder, "Pathfinder skeleton")
    sp.add_argument("--r", type=_float_or_inf, default=math.inf)
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--dissim", choices=("ratio", "subtract"), default="ratio")
    sp.add_argument("--format", choices=("net", "dot"), default="net")

    sp = add("pscores", cmd_pscores, "Ps-core numbers")
    sp.add_argument("--mode", choices=MODES)
    sp.add_argument("--top", type=int)
    sp.add_argument("--svg", help="write the core expansion dendrogram (with --mode)")
    sp.add_argument("--nam", help="names file with iso2 codes")

    sp = add("dissim", cmd_dissim, "node dissimilarity matrix")
    sp.add_argument("--method", choices=ROW_METHODS + LINK_METHODS, default="corrected_salton_1m")
    sp.add_argument("--missing", choices=("zero", "pairwise"), default="zero")
    sp.add_argument("--power", type=float, help="apply w**P before computing")

    sp = add("balassa", cmd_balassa, "Balassa index or its log2 (activity)")
    sp.add_argument("--log2", action="store_true")

    sp = add("cluster", cmd_cluster, "Ward clustering of a dissimilarity matrix")
    sp.add_argument("--method", choices=("ward",), default="ward")
    sp.add_argument("--swaps", help="file of internal node ids to swap, applied in order")
    sp.add_argument("--cut", type=int, help="number of clusters for the partition")
    sp.add_argument("--clu", help="write the partition as a Pajek .clu file")
    sp.add_argument("--order", help="write the leaf order")
    sp.add_argument("--svg", help="write the dendrogram picture")

    sp = add("blockmodel", cmd_blockmodel, "block means of a matrix under a partition")
    sp.add_argument("--clu", required=True)
    sp.add_argument("--names", help="comma separated cluster names")

    sp = add("matrix", cmd_matrix, "matrix picture (SVG)")
    sp.add_argument("--order", help="order file")
    sp.add_argument("--dendrogram", help="take the order from a dendrogram file")
    sp.add_argument("--palette", choices=("grey", "diverging"), default="grey")
    sp.add_argument("--clu", help="partition whose boundaries are drawn")

    sp = add("dendro", cmd_dendro, "dendrogram picture (SVG)")
    sp.add_argument("--heights", choices=("raw", "tmax_minus_t"), default="raw")
    sp.add_argument("--tmax", type=float)

    sp = add("dot", cmd_dot, "Graphviz export")
    sp.add_argument("--power", type=float, default=0.1, help="pen width ~ w**P")

    sp = add("repro", cmd_repro, "run the full Erasmus analysis", input_help=None, out_help=None)
    sp.add_argument("dataset", choices=("erasmus",))
    sp.add_argument("--data", help="directory with ErasmusFlows.net and companions")
    sp.add_argument("--out", "-o", required=True, help="output directory")
    return p


def _warn_to_stderr(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    old = warnings.showwarning
    warnings.showwarning = _warn_to_stderr
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            args.func(args)
    except (NetworkError, OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    finally:
        warnings.showwarning = old
    return 0


if __name__ == "__main__":
    sys.exit(main())
