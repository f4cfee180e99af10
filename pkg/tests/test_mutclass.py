import pytest

from annulus_mcluster.angulation import canonical_form, delta0, mutate
from annulus_mcluster.geometry import AnnulusConfig
from annulus_mcluster.mutclass import (
    ClassDatabase,
    FormulaError,
    ResourceLimitExceeded,
    closed_form_count,
    enumerate_angulation_classes,
    enumerate_quiver_classes,
    summary_report,
    verify_bijection,
)
from annulus_mcluster.quiver import mutate_quiver, quiver_canonical


def test_small_counts():
    cfg = AnnulusConfig(2, 2, 1)
    assert len(enumerate_angulation_classes(cfg, use_flip=False)) == 5
    assert len(enumerate_angulation_classes(cfg, use_flip=True)) == 4
    assert len(enumerate_quiver_classes(cfg)) == 4
    cfg = AnnulusConfig(3, 2, 1)
    assert len(enumerate_angulation_classes(cfg)) == 12
    assert len(enumerate_quiver_classes(cfg)) == 12


def test_two_sides_agree_for_m2():
    cfg = AnnulusConfig(2, 2, 2)
    assert len(enumerate_angulation_classes(cfg)) == len(enumerate_quiver_classes(cfg))


@pytest.mark.parametrize("p,q", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_formula_matches_search(p, q):
    cfg = AnnulusConfig(p, q, 1)
    assert closed_form_count(p, q, False) == len(enumerate_angulation_classes(cfg, use_flip=False))
    assert closed_form_count(p, q, True) == len(enumerate_angulation_classes(cfg, use_flip=True))


def test_formula_values():
    assert closed_form_count(2, 2, True) == 4
    assert closed_form_count(2, 2, False) == 5
    assert closed_form_count(3, 2, False) == 12
    assert closed_form_count(3, 2, True) == closed_form_count(2, 3, True) == 12
    with pytest.raises(ValueError):
        closed_form_count(1, 2, False)
    assert issubclass(FormulaError, ArithmeticError)


def test_closure_under_mutation():
    cfg = AnnulusConfig(3, 2, 1)
    db = enumerate_angulation_classes(cfg)
    assert canonical_form(delta0(cfg)) in db
    for a in db.witnesses.values():
        for j in range(cfg.rank):
            assert canonical_form(mutate(a, j)) in db
    qdb = enumerate_quiver_classes(cfg)
    for Q in qdb.witnesses.values():
        for j in range(Q.n):
            assert quiver_canonical(mutate_quiver(Q, j)) in qdb


def test_edges_recorded():
    db = enumerate_angulation_classes(AnnulusConfig(2, 2, 1), record_edges=True)
    assert {a for a, _ in db.edges} == db.classes


def test_bijection_report():
    cfg = AnnulusConfig(2, 2, 1)
    rep = verify_bijection(cfg, samples=10, seed=1)
    assert rep.passed and rep.well_defined and rep.injective and rep.surjective
    assert rep.angulation_count == rep.quiver_count == 4
    # rotation-only classes over-count: two of them share a quiver
    rotation_only = enumerate_angulation_classes(cfg, use_flip=False)
    bad = verify_bijection(cfg, samples=2, seed=1, angulations=rotation_only)
    assert not bad.injective and bad.to_json()["result"] == "fail"


def test_resource_guard():
    with pytest.raises(ResourceLimitExceeded):
        enumerate_angulation_classes(AnnulusConfig(3, 2, 2), max_classes=10)
    with pytest.raises(ResourceLimitExceeded):
        enumerate_quiver_classes(AnnulusConfig(3, 2, 2), max_classes=10)


def test_database_round_trip(tmp_path):
    cfg = AnnulusConfig(2, 2, 2)
    for db in (enumerate_angulation_classes(cfg), enumerate_quiver_classes(cfg)):
        path = tmp_path / f"{db.side}.jsonl"
        db.save_jsonl(path)
        back = ClassDatabase.load_jsonl(path)
        assert back.side == db.side and back.cfg == cfg
        assert back.witnesses == db.witnesses


def test_order_independence():
    cfg = AnnulusConfig(2, 3, 2)
    a = enumerate_angulation_classes(cfg)
    b = enumerate_angulation_classes(cfg)
    assert a.classes == b.classes


def test_summary_report_shape():
    rep = summary_report(AnnulusConfig(2, 2, 1))
    assert rep["counts"] == {"angulation": 4, "quiver": 4}
    assert rep["bijection"]["result"] == "pass"
    assert rep["formula"] == {"value": 4, "matches": True}
    rep = summary_report(AnnulusConfig(2, 2, 2), use_flip=False)
    assert rep["bijection"]["result"] == "skipped"
    assert rep["formula"]["value"] is None
