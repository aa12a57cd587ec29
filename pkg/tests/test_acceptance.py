"""Acceptance criteria 1-8, each at its stated tolerance.

Criteria 1-4 and 7 need the published flow files (``ErasmusFlows.net`` and
companions), located through ``WNET_ERASMUS_DATA`` or ``data/erasmus``.
Without them those tests fail rather than skip. The terminal summary lists
one PASS/FAIL line per criterion.
"""

import functools
import math

import numpy as np
import pytest

from conftest import synthetic_erasmus
from oracles import core_numbers_by_subsets, pathfinder_by_paths, random_network, ward_from_scratch
from table1 import ROWS
from wnet import erasmus
from wnet.cli import main
from wnet.cluster import blockmodel, ward
from wnet.cores import ps_core_numbers
from wnet.dissim import corrected_salton_pair, row_dissimilarity
from wnet.hits import hits
from wnet.model import Network, WeightMatrix, density, to_matrix, weight_range
from wnet.normalize import activity
from wnet.pajek import write_net
from wnet.skeleton import PathfinderParams, k_neighbors, pathfinder
from wnet.transforms import log_transform, power_transform

criterion = pytest.mark.criterion


@functools.lru_cache(maxsize=1)
def _load(d):
    return erasmus.load(d)


def erasmus_net():
    d = erasmus.find_data_dir()
    if d is None:
        pytest.fail("Erasmus flow data not found: set WNET_ERASMUS_DATA or add data/erasmus/ErasmusFlows.net")
    return _load(d)


def node(net, code):
    return net.index(code)


# 1 --------------------------------------------------------------------------

@criterion(1, "data fidelity")
def test_data_fidelity():
    net = erasmus_net()
    assert net.n == 35
    assert weight_range(net) == (1, 217003)
    # 1223 of 35*35 cells carry an arc, loops included
    assert abs(density(net, loops=True) - 0.9984) <= 0.001
    M = to_matrix(net)
    missing = {(net.codes[u], net.codes[v]) for u, v in np.argwhere(~M.present)}
    assert missing == {("CY", "LI"), ("MT", "LI")}


# 2 --------------------------------------------------------------------------

@criterion(2, "hubs and authorities table")
def test_table1():
    net = erasmus_net()
    res = hits(net)
    for code, wod, wid, hub, aut, qh, qa in ROWS:
        i = node(net, code)
        assert res.wod[i] == wod, code
        assert res.wid[i] == wid, code
        assert abs(res.y[i] - hub) <= 1e-4, code
        assert abs(res.x[i] - aut) <= 1e-4, code
        assert abs(res.qh[i] - qh) <= 5e-3, code
        assert abs(res.qa[i] - qa) <= 5e-3, code


# 3 --------------------------------------------------------------------------

@criterion(3, "Ps-cores golden values")
def test_pscores():
    net = erasmus_net()
    center = {node(net, c) for c in erasmus.CENTER}
    for mode, level in (("all", 609063), ("in", 287693), ("out", 364594)):
        dec = ps_core_numbers(net, mode)
        assert dec.levels[0] == level, mode
        assert set(dec.core(level)) == center, mode
    dec = ps_core_numbers(net, "all")
    for code, level in (("PL", 452314), ("GB", 439822), ("PT", 400014)):
        assert dec.core_number[node(net, code)] == level, code


@criterion(3, "Ps-cores golden values")
def test_pscores_cli(capsys):
    erasmus_net()
    path = erasmus.find_data_dir() / erasmus.FILES[0]
    assert main(["pscores", str(path), "--mode", "all", "--top", "1"]) == 0
    level, names = capsys.readouterr().out.strip().split(": ")
    # member order within a level is not pinned down, so compare as a set
    assert level == "609063" and set(names.split()) == set(erasmus.CENTER)


# 4 --------------------------------------------------------------------------

@criterion(4, "skeleton claims")
def test_skeletons():
    net = erasmus_net()
    one = k_neighbors(net, 1, "out")
    chosen = np.bincount([t for _, t, _ in one.arcs], minlength=net.n)
    es = node(net, "ES")
    assert chosen[es] == chosen.max() and (chosen == chosen.max()).sum() == 1

    two = k_neighbors(net, 2, "out")
    center = {node(net, c) for c in erasmus.CENTER}
    picks = {v: set() for v in range(net.n)}
    for s, t, _ in two.arcs:
        picks[s].add(t)
    outsiders = [net.codes[v] for v in range(net.n) if not picks[v] & center]
    assert outsiders == ["SK"]


# 5 --------------------------------------------------------------------------

@criterion(5, "transform spot values")
def test_transform_values():
    M = WeightMatrix(np.array([[217003.0]]), np.array([[True]]))
    assert abs(power_transform(M, 0.1).values[0, 0] - 3.417013) <= 1e-6
    assert abs(log_transform(M).values[0, 0] - 12.28767) <= 1e-5


# 6 --------------------------------------------------------------------------

def full(values):
    return WeightMatrix(values, np.ones(values.shape, bool))


@criterion(6, "property suites")
def test_corrected_salton_properties():
    rng = np.random.default_rng(61)
    for _ in range(1000):
        n = int(rng.integers(3, 8))
        w = rng.uniform(0, 10, (n, n)) * (rng.random((n, n)) < 0.8)
        w[np.arange(n), rng.integers(0, n, n)] += 0.1  # no zero rows
        alpha, beta = rng.uniform(0.05, 20, 2)
        for u in range(n):
            assert abs(corrected_salton_pair(w, u, u) - 1) <= 1e-12           # 3
            for v in range(u + 1, n):
                s = corrected_salton_pair(w, u, v)
                assert -1 - 1e-12 <= s <= 1 + 1e-12                          # 1
                assert abs(s - corrected_salton_pair(w, v, u)) <= 1e-12       # 2
                assert -1e-12 <= s                                            # 4
                ws = w.copy()
                ws[u] *= alpha
                ws[v] *= beta
                assert abs(corrected_salton_pair(ws, u, v) - s) <= 1e-9       # 5
        # 6: row 1 equals alpha times row 0 under the corrected pairing
        w[1, 2:] = alpha * w[0, 2:]
        w[1, 1], w[1, 0] = alpha * w[0, 0], alpha * w[0, 1]
        assert abs(corrected_salton_pair(w, 1, 0) - 1) <= 1e-12


@criterion(6, "property suites")
def test_cores_against_subset_oracle():
    rng = np.random.default_rng(62)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        net = random_network(rng, n, p=float(rng.uniform(0.2, 0.9)), loops=bool(rng.integers(2)))
        W = to_matrix(net).values
        for mode in ("all", "in", "out"):
            dec = ps_core_numbers(net, mode)
            assert dec.core_number.tolist() == core_numbers_by_subsets(W, mode).tolist()
            for t, s in zip(dec.levels, dec.levels[1:]):
                assert set(dec.core(s)) <= set(dec.core(t))


@criterion(6, "property suites")
def test_pathfinder_against_path_enumeration():
    rng = np.random.default_rng(63)
    for _ in range(200):
        n = int(rng.integers(3, 8))
        P = (rng.random((n, n)) < 0.7) & ~np.eye(n, dtype=bool)
        M = WeightMatrix(np.where(P, rng.uniform(0.5, 10, (n, n)), 0.0), P)
        for r in (1, 2, math.inf):
            for q in sorted({2, 3, n - 1}):
                got = pathfinder(M, PathfinderParams(r, q))
                assert (got == pathfinder_by_paths(M.values, M.present, r, q)).all()


@criterion(6, "property suites")
def test_ward_against_naive_oracle():
    rng = np.random.default_rng(64)
    for _ in range(50):
        D = rng.uniform(0.1, 10, (8, 8))
        D = np.triu(D, 1)
        D = D + D.T
        got = ward(D).merges
        want = ward_from_scratch(D)
        assert [(a, b) for a, b, _ in got] == [(a, b) for a, b, _ in want]
        assert np.allclose([h for *_, h in got], [h for *_, h in want], rtol=0, atol=1e-9)


@criterion(6, "property suites")
def test_hits_against_eigendecomposition():
    rng = np.random.default_rng(65)
    for _ in range(50):
        net = random_network(rng, 6, p=0.8, integer=False)
        W = to_matrix(net).values
        res = hits(net)
        for mat, got in ((W.T @ W, res.x), (W @ W.T, res.y)):
            vals, vecs = np.linalg.eigh(mat)
            top = vecs[:, -1] * np.sign(vecs[:, -1].sum())
            assert np.abs(got - top).max() <= 1e-8


@criterion(6, "property suites")
def test_k_neighbors_invariant_under_power():
    rng = np.random.default_rng(66)
    for _ in range(100):
        net = random_network(rng, int(rng.integers(3, 12)), integer=bool(rng.integers(2)))
        powered = Network(net.nodes, tuple((s, t, w**0.1) for s, t, w in net.arcs))
        for k in (1, 2, 3):
            for direction in ("out", "in"):
                a = {(s, t) for s, t, _ in k_neighbors(net, k, direction).arcs}
                b = {(s, t) for s, t, _ in k_neighbors(powered, k, direction).arcs}
                assert a == b


# 7 --------------------------------------------------------------------------

@criterion(7, "qualitative structure")
def test_salton_center_subtree():
    net = erasmus_net()
    D = row_dissimilarity(power_transform(to_matrix(net), 0.1), "corrected_salton_1m")
    d = ward(D)
    center = {node(net, c) for c in ("IT", "ES", "FR", "DE")}
    subtrees = [set(d.leaves(v)) for v in range(d.n, d.root + 1)]
    assert center in subtrees


@criterion(7, "qualitative structure")
def test_activity_blockmodel_signs():
    net = erasmus_net()
    part = erasmus.block_partition(net)
    bm = blockmodel(activity(to_matrix(net)), part)
    lie, high = bm.names.index("LieLux"), bm.names.index("High")
    assert bm.values[lie, lie] > 0
    assert bm.values[lie, high] < 0 and bm.values[high, lie] < 0


# 8 --------------------------------------------------------------------------

@criterion(8, "determinism")
def test_repro_byte_identical(tmp_path, capsys):
    data = erasmus.find_data_dir()
    if data is None:
        # stand-in with the real node list; the flows do not affect determinism
        data = tmp_path / "data"
        data.mkdir()
        (data / "ErasmusFlows.net").write_text(write_net(synthetic_erasmus()), encoding="utf-8")
    trees = []
    for name in ("run1", "run2"):
        assert main(["repro", "erasmus", "--data", str(data), "--out", str(tmp_path / name)]) == 0
        capsys.readouterr()
        root = tmp_path / name
        trees.append({p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()})
    assert trees[0] == trees[1]
    assert len(trees[0]) >= 20
