"""Acceptance criteria, one test each.  Every test prints a single
``PASS``/``FAIL`` line with the numbers behind it; all checks are exact."""

import random

import pytest

from annulus_mcluster.angulation import delta0, quiver_of
from annulus_mcluster.checks import (
    check_ar_quiver,
    check_crossings,
    check_factoring,
    check_flip_reversal,
    check_walks,
    expected_delta0_quiver,
    random_walks,
    walk_states,
)
from annulus_mcluster.geometry import AnnulusConfig
from annulus_mcluster.mutclass import (
    closed_form_count,
    enumerate_angulation_classes,
    enumerate_quiver_classes,
    verify_bijection,
)

CONFIGS = [(2, 2, 1), (3, 2, 1), (3, 3, 1), (4, 2, 1), (2, 2, 2), (3, 2, 2), (2, 2, 3)]
WALKS = 200
WALK_LENGTH = 12
SAMPLED = 50
MAX_TWIST = 3
AR_WINDOW = AR_LENGTH = 6
SEED = 20240


def _report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def walks():
    rng = random.Random(SEED)
    return {dims: random_walks(AnnulusConfig(*dims), WALKS, WALK_LENGTH, rng) for dims in CONFIGS}


def test_criterion_1_bijection(capsys):
    parts, ok = [], True
    for dims in CONFIGS:
        cfg = AnnulusConfig(*dims)
        db = enumerate_angulation_classes(cfg)
        qdb = enumerate_quiver_classes(cfg)
        rep = verify_bijection(cfg, samples=10, seed=SEED, angulations=db, quivers=qdb)
        ok = ok and len(db) == len(qdb) and rep.passed
        parts.append(f"{dims}={len(db)}/{len(qdb)}")
    _report(capsys, 1, ok, "angulation/quiver classes " + " ".join(parts))


def test_criterion_2_closed_forms(capsys):
    parts, ok = [], True
    expected = {(2, 2, False): 5, (2, 2, True): 4, (3, 2, False): 12, (3, 2, True): 12}
    for p, q in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)]:
        for with_flip in (False, True):
            bfs = len(enumerate_angulation_classes(AnnulusConfig(p, q, 1), use_flip=with_flip))
            formula = closed_form_count(p, q, with_flip)
            ok = ok and bfs == formula and expected.get((p, q, with_flip), bfs) == bfs
            parts.append(f"({p},{q},{'flip' if with_flip else 'rot'}) bfs={bfs} formula={formula}")
    _report(capsys, 2, ok, "; ".join(parts))


@pytest.fixture(scope="module")
def walk_results(walks):
    return {dims: check_walks(AnnulusConfig(*dims), ws) for dims, ws in walks.items()}


def _criterion_from_walks(capsys, n, walk_results, index):
    checked = sum(r[index].checked for r in walk_results.values())
    bad = sum(r[index].total_violations for r in walk_results.values())
    name = next(iter(walk_results.values()))[index].name
    _report(
        capsys,
        n,
        bad == 0 and checked > 0,
        f"{name}: {checked} steps over {WALKS} walks x {len(CONFIGS)} configs, {bad} violations",
    )


def test_criterion_3_commutation(capsys, walk_results):
    _criterion_from_walks(capsys, 3, walk_results, 0)


def test_criterion_4_periodicity(capsys, walk_results):
    _criterion_from_walks(capsys, 4, walk_results, 1)


def test_criterion_5_quiver_axioms(capsys, walk_results):
    _criterion_from_walks(capsys, 5, walk_results, 2)


def test_criterion_6_crossings(capsys):
    checked = bad = 0
    for dims in CONFIGS:
        res = check_crossings(AnnulusConfig(*dims), MAX_TWIST)
        checked += res.checked
        bad += res.total_violations
    _report(capsys, 6, bad == 0, f"{checked} diagonal pairs with twist <= {MAX_TWIST}, {bad} violations")


def test_criterion_7_structure(capsys, walks):
    rng = random.Random(SEED)
    d0_bad, totals = 0, {}
    for dims in CONFIGS:
        cfg = AnnulusConfig(*dims)
        if quiver_of(delta0(cfg)) != expected_delta0_quiver(cfg):
            d0_bad += 1
        states = walk_states(walks[dims])
        # factoring runs on every walk state so each property sees enough cases
        for res in [check_flip_reversal(cfg, rng.sample(states, SAMPLED))] + check_factoring(cfg, states):
            c, b = totals.get(res.name, (0, 0))
            totals[res.name] = (c + res.checked, b + res.total_violations)
    ok = d0_bad == 0 and all(b == 0 and c >= SAMPLED for c, b in totals.values())
    detail = f"distinguished quiver mismatches {d0_bad}; " + "; ".join(
        f"{name} {c} checked {b} violations" for name, (c, b) in totals.items()
    )
    _report(capsys, 7, ok, detail)


def test_criterion_8_ar_quiver(capsys):
    parts, ok = [], True
    for dims in [(2, 2, 1), (3, 2, 2)]:
        results = check_ar_quiver(AnnulusConfig(*dims), AR_WINDOW, AR_LENGTH)
        ok = ok and all(r.ok for r in results)
        bad = sum(r.total_violations for r in results)
        parts.append(f"{dims} {sum(r.checked for r in results)} checks {bad} violations")
    _report(capsys, 8, ok, f"W={AR_WINDOW} L={AR_LENGTH}: " + "; ".join(parts))
