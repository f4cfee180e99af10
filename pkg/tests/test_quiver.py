import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from annulus_mcluster.quiver import (
    ColouredQuiver,
    QuiverAxiomError,
    canonical_quiver,
    delete_vertex,
    is_connected,
    is_isomorphic,
    mutate_quiver,
    quiver_canonical,
)


def matrix_of(Q):
    """Skew-symmetric exchange matrix of an m = 1 coloured quiver."""
    B = [[0] * Q.n for _ in range(Q.n)]
    for (i, j), (c, r) in Q.arrows.items():
        if c == 0:
            B[i][j] += r
            B[j][i] -= r
    return B


def matrix_mutation(B, k):
    n = len(B)
    out = [row[:] for row in B]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


def quiver_from_matrix(B, m=1):
    edges = []
    for i, row in enumerate(B):
        for j, b in enumerate(row):
            edges += [(i, j)] * max(b, 0)
    return ColouredQuiver.from_colour0(len(B), m, edges)


@st.composite
def m1_quivers(draw):
    n = draw(st.integers(2, 6))
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b = draw(st.integers(-2, 2))
            B[i][j], B[j][i] = b, -b
    return quiver_from_matrix(B)


def test_path_becomes_cycle():
    Q = ColouredQuiver.from_colour0(3, 1, [(0, 1), (1, 2)])
    R = mutate_quiver(Q, 1)
    assert R == ColouredQuiver.from_colour0(3, 1, [(0, 2), (2, 1), (1, 0)])


def test_mutation_is_involution_for_m1():
    Q = ColouredQuiver.from_colour0(4, 1, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    for j in range(4):
        assert mutate_quiver(mutate_quiver(Q, j), j) == Q


def test_ten_random_quivers_against_matrix_mutation():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(3, 6)
        B = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                b = rng.choice([-1, 0, 0, 1, 2])
                B[i][j], B[j][i] = b, -b
        Q = quiver_from_matrix(B)
        for _ in range(6):
            k = rng.randrange(n)
            Q = mutate_quiver(Q, k)
            B = matrix_mutation(B, k)
            assert matrix_of(Q) == B
            assert Q == quiver_from_matrix(B)


@given(m1_quivers(), st.data())
def test_matches_matrix_mutation(Q, data):
    k = data.draw(st.integers(0, Q.n - 1))
    assert matrix_of(mutate_quiver(Q, k)) == matrix_mutation(matrix_of(Q), k)


def test_axiom_violations_reported():
    bad = ColouredQuiver(2, 2, {(0, 1): (0, 1)})
    assert bad.axiom_violations()
    with pytest.raises(QuiverAxiomError):
        bad.check()
    loop = ColouredQuiver(2, 1, {(0, 0): (0, 1)})
    assert any("loop" in p for p in loop.axiom_violations())
    with pytest.raises(QuiverAxiomError):
        ColouredQuiver.from_multiset(2, 1, {(0, 1): {0: 1, 1: 1}})


def test_json_and_dot():
    Q = ColouredQuiver.from_colour0(3, 2, [(0, 1), (1, 2), (1, 2)])
    assert ColouredQuiver.from_json(Q.to_json()) == Q
    dot = Q.to_dot()
    assert '0 -> 1 [label="(0)"]' in dot
    assert '1 -> 2 [label="(0) x2"]' in dot
    assert "(2)" not in dot
    assert "(2)" in Q.to_dot(full=True)


@given(m1_quivers(), st.randoms())
def test_canonical_form_ignores_labels(Q, rnd):
    perm = list(range(Q.n))
    rnd.shuffle(perm)
    P = Q.relabel(perm)
    assert quiver_canonical(P) == quiver_canonical(Q)
    assert is_isomorphic(P, Q)
    assert canonical_quiver(P) == canonical_quiver(Q)


def test_canonical_form_independent_of_insertion_order():
    arrows = {(0, 1): (0, 1), (1, 0): (1, 1), (1, 2): (0, 2), (2, 1): (1, 2)}
    Q1 = ColouredQuiver(3, 1, arrows)
    Q2 = ColouredQuiver(3, 1, dict(reversed(list(arrows.items()))))
    assert quiver_canonical(Q1) == quiver_canonical(Q2)


def test_isomorphism_examples():
    # oriented 4-cycle against a 4-cycle with one reversed arrow
    A = ColouredQuiver.from_colour0(4, 1, [(0, 1), (1, 2), (2, 3), (3, 0)])
    B = ColouredQuiver.from_colour0(4, 1, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert not is_isomorphic(A, B)
    # a double arrow at the end of a path moves to the start under reversal
    C = ColouredQuiver.from_colour0(3, 1, [(0, 1), (1, 2), (1, 2)])
    assert not is_isomorphic(C, C.reversed())
    D = ColouredQuiver.from_colour0(3, 1, [(0, 1), (2, 1)])
    assert is_isomorphic(D, D.reversed()) is False
    E = ColouredQuiver.from_colour0(3, 1, [(0, 1), (1, 2)])
    assert is_isomorphic(E, E.reversed())


def test_delete_and_connectivity():
    Q = ColouredQuiver.from_colour0(4, 1, [(0, 1), (1, 2), (2, 3)])
    assert is_connected(Q)
    R = delete_vertex(Q, 1)
    assert R.n == 3 and not is_connected(R)
    assert R == ColouredQuiver.from_colour0(3, 1, [(1, 2)])


def test_higher_m_periodicity_on_acyclic():
    Q = ColouredQuiver.from_colour0(3, 2, [(0, 1), (1, 2)])
    for j in range(3):
        R = Q
        for _ in range(3):
            R = mutate_quiver(R, j)
            assert not R.axiom_violations()
        assert R == Q
