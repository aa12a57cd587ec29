"""Erasmus+ learning mobility network: node list, named partition, loader.

The flow data itself is not bundled. Point ``WNET_ERASMUS_DATA`` at a
directory holding ``ErasmusFlows.net`` (and optionally
``ErasmusFlowsISO.nam`` and ``PopTotal.vec``), or place the files in
``data/erasmus`` under the working directory.
"""

from __future__ import annotations

import os
from pathlib import Path

from .cluster import Partition
from .model import Network, NetworkError
from .pajek import read_nam, read_net, read_vec, with_iso2, with_population

COUNTRIES = (
    ("Austria", "AT"), ("Belgium", "BE"), ("Bulgaria", "BG"), ("Croatia", "HR"),
    ("Cyprus", "CY"), ("Czechia", "CZ"), ("Denmark", "DK"), ("Estonia", "EE"),
    ("Finland", "FI"), ("France", "FR"), ("Germany", "DE"), ("Greece", "GR"),
    ("Hungary", "HU"), ("Iceland", "IS"), ("Ireland", "IE"), ("Italy", "IT"),
    ("Latvia", "LV"), ("Liechtenstein", "LI"), ("Lithuania", "LT"), ("Luxembourg", "LU"),
    ("Malta", "MT"), ("Netherlands", "NL"), ("North Macedonia", "MK"), ("Norway", "NO"),
    ("Poland", "PL"), ("Portugal", "PT"), ("Rest of the world", "rW"), ("Romania", "RO"),
    ("Serbia", "RS"), ("Slovakia", "SK"), ("Slovenia", "SI"), ("Spain", "ES"),
    ("Sweden", "SE"), ("Türkiye", "TR"), ("United Kingdom", "GB"),
)

# five-cluster summary of the activity (log2 Balassa) matrix
BLOCKS = (
    ("Less", ("GR", "PT", "PL", "SK", "CZ", "HU", "LV", "LT", "EE", "rW", "MT")),
    ("Balkan", ("SI", "HR", "MK", "RS", "BG", "RO", "CY", "TR")),
    ("LieLux", ("LI", "LU")),
    ("High", ("IS", "DK", "NO", "SE", "FI", "NL", "GB")),
    ("Center", ("IE", "BE", "FR", "AT", "DE", "IT", "ES")),
)

CENTER = ("ES", "DE", "FR", "IT")

FILES = ("ErasmusFlows.net", "ErasmusFlowsISO.nam", "PopTotal.vec")


def block_partition(net: Network) -> Partition:
    """The named five-block partition aligned to ``net``'s iso2 codes."""
    where = {code: c for c, (_, codes) in enumerate(BLOCKS, start=1) for code in codes}
    try:
        clusters = tuple(where[v.code] for v in net.nodes)
    except KeyError as e:
        raise NetworkError(f"node {e.args[0]!r} is not in the five-block partition") from None
    return Partition(clusters, tuple(name for name, _ in BLOCKS))


def find_data_dir() -> Path | None:
    candidates = []
    if os.environ.get("WNET_ERASMUS_DATA"):
        candidates.append(Path(os.environ["WNET_ERASMUS_DATA"]))
    candidates.append(Path.cwd() / "data" / "erasmus")
    candidates.append(Path(__file__).resolve().parents[2] / "data" / "erasmus")
    for c in candidates:
        if (c / FILES[0]).is_file():
            return c
    return None


def with_known_codes(net: Network) -> Network:
    """Attach iso2 codes when the node labels are exactly the 35 country names."""
    if all(v.iso2 is None for v in net.nodes) and list(net.labels) == [c[0] for c in COUNTRIES]:
        return with_iso2(net, [c[1] for c in COUNTRIES])
    return net


def load(data_dir: str | os.PathLike) -> Network:
    """Load the flow network and attach iso2 codes and populations when present."""
    d = Path(data_dir)
    net = read_net(d / FILES[0])
    if (d / FILES[1]).is_file():
        net = with_iso2(net, read_nam(d / FILES[1]))
    else:
        net = with_known_codes(net)
    if (d / FILES[2]).is_file():
        net = with_population(net, read_vec(d / FILES[2]))
    return net
