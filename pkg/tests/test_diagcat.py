import json

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from annulus_mcluster.angulation import delta0
from annulus_mcluster.diagcat import (
    ARLabel,
    build_ar_quiver,
    elementary_moves,
    functor_label,
    label_shift,
    label_tau,
    translate_dual_check,
    tube_pattern,
)
from annulus_mcluster.geometry import AnnulusConfig, OuterPeripheral, Spanning, level, shift, tau


def test_move_examples():
    cfg = AnnulusConfig(3, 2, 2)
    m = cfg.m
    assert elementary_moves(cfg.O(1, m + 2), cfg) == [cfg.O(1, 2 * m + 2)]
    assert elementary_moves(cfg.O(1, 3 * m + 2), cfg) == [cfg.O(1, 4 * m + 2), cfg.O(1 + m, 2 * m + 2)]
    assert elementary_moves(cfg.I(2, 2 * m + 2), cfg) == [cfg.I(2, 3 * m + 2), cfg.I(2 + m, m + 2)]
    assert elementary_moves(cfg.S(1, 3), cfg) == [cfg.S(1 + m, 3), cfg.S(1, 3 + m)]
    with pytest.raises(ValueError):
        elementary_moves(cfg.S(0, 1), cfg)


def test_duality_examples():
    cfg = AnnulusConfig(2, 3, 2)
    m = cfg.m
    assert translate_dual_check(cfg.O(0, m + 2), cfg.O(0, 2 * m + 2), cfg)
    assert translate_dual_check(cfg.S(0, 0), cfg.S(m, 0), cfg)
    assert translate_dual_check(cfg.S(0, 0), cfg.O(0, m + 2), cfg)


def test_mesh_shape():
    cfg = AnnulusConfig(3, 2, 2)
    m = cfg.m
    first = elementary_moves(cfg.O(0, m + 2), cfg)
    assert first == [cfg.O(0, 2 * m + 2)]
    assert cfg.O(m, m + 2) in elementary_moves(first[0], cfg)


def test_tube_labels():
    cfg = AnnulusConfig(3, 2, 2)
    m = cfg.m
    assert functor_label(cfg.O(0, m + 2), cfg) == ARLabel("TubeP", 0, 1, 0)
    assert functor_label(cfg.O(m, m + 2), cfg) == ARLabel("TubeP", 1, 1, 0)
    assert functor_label(cfg.I(0, 2 * m + 2), cfg) == ARLabel("TubeQ", 0, 2, 0)
    assert str(functor_label(shift(cfg.O(2 * m, 5 * m + 2), 1), cfg)) == "Tp^1:Q(2,5)"
    for i in range(cfg.p):
        for j in range(1, 5):
            a = cfg.O(i * m, j * m + 2)
            lab = functor_label(tau(a, m), cfg)
            assert lab == ARLabel("TubeP", (i - 1) % cfg.p, j, 0)


def test_transjective_labels():
    cfg = AnnulusConfig(3, 2, 2)
    base = delta0(cfg).diagonals
    for i, alpha in enumerate(base):
        assert functor_label(alpha, cfg) == ARLabel("Transjective", i, 0, 0)
        for s in range(-3, 4):
            for d in range(cfg.m):
                a = shift(alpha, d + cfg.m * s)
                assert functor_label(a, cfg) == ARLabel("Transjective", i, s, d)
    assert str(ARLabel("Transjective", 3, 2, 0)) == "S^0:tau^2 P_3"


@given(
    st.sampled_from([(2, 2, 1), (3, 2, 2), (2, 3, 3)]),
    st.integers(-40, 40),
    st.integers(-40, 40),
    st.integers(-12, 12),
)
def test_label_shift_compatibility(dims, u, v, s):
    cfg = AnnulusConfig(*dims)
    a = cfg.S(u, u + cfg.m * v)
    lab = functor_label(a, cfg)
    assert functor_label(shift(a, s), cfg) == label_shift(lab, s, cfg)
    assert level(a, cfg.m) == (-lab.d) % cfg.m
    for b in elementary_moves(a, cfg):
        assert level(b, cfg.m) == level(a, cfg.m)
        assert functor_label(b, cfg).d == lab.d


@pytest.mark.parametrize("dims", [(2, 2, 1), (3, 2, 2), (2, 3, 3)])
def test_ar_quiver_components(dims):
    cfg = AnnulusConfig(*dims)
    ar = build_ar_quiver(cfg, 4, 4)
    summary = ar.summary()
    assert summary["components"] == 3 * cfg.m
    assert summary["by_kind"] == {"S": cfg.m, "Tp": cfg.m, "Tq": cfg.m}
    assert all("," not in n for n in summary["names"])


def test_tube_shape():
    cfg = AnnulusConfig(3, 2, 2)
    L = 5
    ar = build_ar_quiver(cfg, 2, L)
    moves = ar.move_graph()
    for d in range(cfg.m):
        nodes = [
            v for v in moves if isinstance(v, OuterPeripheral) and functor_label(v, cfg).d == d
        ]
        sub = moves.subgraph(nodes)
        relabel = {v: (functor_label(v, cfg).i, functor_label(v, cfg).s) for v in nodes}
        tube = nx.relabel_nodes(sub, relabel)
        assert set(tube.edges) == set(tube_pattern(cfg.p, L).edges)


def test_tau_period_and_quasi_simples():
    cfg = AnnulusConfig(2, 3, 2)
    ar = build_ar_quiver(cfg, 3, 4)
    moves = ar.move_graph()
    for v in ar.graph:
        lab = ar.graph.nodes[v]["label"]
        assert functor_label(tau(v, cfg.m), cfg) == label_tau(lab, cfg)
        if isinstance(v, Spanning):
            continue
        period = cfg.p if isinstance(v, OuterPeripheral) else cfg.q
        assert tau(v, cfg.m, period) == v
        assert all(tau(v, cfg.m, k) != v for k in range(1, period))
        if lab.s == 1:
            assert moves.in_degree(v) == 1 and moves.out_degree(v) == 1


def test_exports():
    cfg = AnnulusConfig(2, 2, 1)
    ar = build_ar_quiver(cfg, 1, 2)
    dot = ar.to_dot()
    assert dot.startswith("digraph AR {")
    assert "[style=dashed]" in dot
    assert 'label="Tp^0:Q(0,1)"' in dot
    data = json.loads(ar.dumps())
    assert data["summary"]["components"] == 3
    assert len(data["nodes"]) == ar.graph.number_of_nodes()
    assert ar.to_dot() == build_ar_quiver(cfg, 1, 2).to_dot()
