from fractions import Fraction as F
from itertools import combinations

import pytest

from khall.errors import InputError, PreconditionError, WindowExhausted
from khall.kha import _swap_grads, LeviKClass
from khall.partitions import (Partition, associated_partition, cochar_geq, compadm_precedes,
                              enumerate_admissible, find_admissible, refines, window_box)
from khall.quiver import gloop, jordan, q_zero, quiver_k
from khall.weights import levi_slots

P = Partition.of


def test_refines_examples():
    a, b = 2, -1
    assert refines(P([((1,), a), ((1,), b)]), P([((2,), a + b)]))
    A = P([((1,), a), ((1,), b)])
    assert refines(A, A)
    B = P([((1,), b), ((1,), a)])
    assert not refines(A, B) and not refines(B, A)
    with pytest.raises(InputError):
        refines(A, P([((2,), 0)]))


def test_q_zero_s_set():
    S = enumerate_admissible(q_zero(), (2,), 0, (0,), "S", 3)
    assert [A.partition for A in S] == [P([((1,), w), ((1,), -w)]) for w in range(4)]
    assert enumerate_admissible(q_zero(), (2,), 0, (0,), "T", 3) == []


@pytest.mark.parametrize("w", range(-2, 3))
def test_jordan_d1(w):
    J = jordan()
    S = enumerate_admissible(J, (1,), w, (0,), "S", 3)
    T = enumerate_admissible(J, (1,), w, (0,), "T", 3)
    assert [A.partition for A in S] == [A.partition for A in T] == [P([((1,), w)])]


@pytest.mark.parametrize("w", [-2, 0, 2])
def test_jordan_d2_even(w):
    S = {A.partition for A in enumerate_admissible(jordan(), (2,), w, (0,), "S", 3)}
    assert P([((2,), w)]) in S
    for A in S:
        if len(A) == 2:
            assert A.weights[0] > A.weights[1]


def test_assoc_example():
    A = associated_partition(jordan(), (2,), (0,), (2, 0))
    assert A.partition == P([((1,), 2), ((1,), 0)])
    assert A.r_sequence == (F(3, 2),)
    triv = associated_partition(jordan(), (2,), (0,), (1, 1))
    assert triv.partition == P([((2,), 2)]) and triv.nodes == ()
    with pytest.raises(PreconditionError):
        associated_partition(jordan(), (2,), (0,), (0, 1))


def test_assoc_tree_depends_only_on_partition():
    K = quiver_k()
    seen = {}
    for chi in window_box((2, 1), 1, 3):
        A = associated_partition(K, (2, 1), (0, 0), chi)
        key = A.tree_key()
        assert seen.setdefault(A.partition, key) == key


@pytest.mark.parametrize("Q,d,w,delta", [
    (jordan(), (2,), 0, (0,)), (jordan(), (3,), 1, (0,)), (quiver_k(), (1, 1), 0, (0, 0)),
    (quiver_k(), (2, 1), 1, (F(1, 3), F(-1, 5))), (gloop(2), (2,), 1, (0,)),
    (q_zero(), (3,), 0, (0,)),
])
def test_admissible_invariants(Q, d, w, delta):
    for kind in "STU":
        for A in enumerate_admissible(Q, d, w, delta, kind, 2):
            assert (A.partition.d, A.partition.w) == (d, w)
            if kind == "U":
                continue
            slots = levi_slots(A.partition.dims)
            vert = [v for v, n in enumerate(d) for _ in range(n)]
            for s, dl in zip(slots, A.delta_A):
                for k in s:
                    assert -A.chi_A[k] == dl[vert[k]]


@pytest.mark.parametrize("Q,d,w", [(jordan(), (2,), 0), (jordan(), (3,), 0), (quiver_k(), (1, 1), 1),
                                   (gloop(2), (2,), 0)])
def test_window_monotone(Q, d, w):
    delta = (0,) * Q.n
    for kind in "STU":
        small = {A.partition for A in enumerate_admissible(Q, d, w, delta, kind, 1)}
        big = {A.partition for A in enumerate_admissible(Q, d, w, delta, kind, 3)}
        assert small <= big


def test_compadm_example():
    J = jordan()
    A = find_admissible(J, P([((1,), 3), ((1,), -1)]), (0,))
    B = find_admissible(J, P([((1,), 2), ((1,), 0)]), (0,))
    assert A.r_sequence == (F(5, 2),) and B.r_sequence == (F(3, 2),)
    assert compadm_precedes(J, A, B) == "after"
    assert compadm_precedes(J, B, A) == "before"
    assert compadm_precedes(J, A, A) == "equal"


@pytest.mark.parametrize("w", range(-4, 5))
def test_jordan_order_by_gap(w):
    J = jordan()
    S = [A for A in enumerate_admissible(J, (2,), w, (0,), "S", 4)]

    def gap(A):
        ws = A.partition.weights
        return ws[0] - ws[1] if len(ws) == 2 else 0

    for A, B in combinations(S, 2):
        rel = compadm_precedes(J, A, B)
        assert rel == ("after" if gap(A) > gap(B) else "before")


@pytest.mark.parametrize("Q,d,w", [(jordan(), (3,), 0), (quiver_k(), (1, 1), 0), (quiver_k(), (2, 1), 1),
                                   (gloop(2), (2,), 1)])
def test_compadm_unrelated_only_for_incomparable_cocharacters(Q, d, w):
    S = enumerate_admissible(Q, d, w, (0,) * Q.n, "S", 2)
    for A, B in combinations(S, 2):
        rel = compadm_precedes(Q, A, B)
        assert rel in ("before", "after", "both")
        if rel == "both":
            assert A.r_sequence == B.r_sequence
            la = [n.lam for n in A.nodes if n.r is not None]
            lb = [n.lam for n in B.nodes if n.r is not None]
            assert any(x != y and not cochar_geq(x, y) and not cochar_geq(y, x) for x, y in zip(la, lb))


def test_q_zero_pieces_are_orthogonal():
    Q = q_zero()
    S = enumerate_admissible(Q, (2,), 0, (0,), "S", 2)
    assert all(compadm_precedes(Q, A, B) == "both" for A, B in combinations(S, 2))


@pytest.mark.parametrize("Q,d", [(jordan(), (2,)), (jordan(), (3,)), (quiver_k(), (1, 1)),
                                 (quiver_k(), (2, 1)), (gloop(2), (2,))])
def test_swap_conjugate_stays_in_t(Q, d):
    delta = (0,) * Q.n
    for w in range(-2, 3):
        for A in enumerate_admissible(Q, d, w, delta, "T", 2):
            if len(A.partition) != 2:
                continue
            (e, v), (f, u) = A.partition.parts
            g = _swap_grads(Q, LeviKClass((e, f), (v, u)))
            conj = P([(f, g[0]), (e, g[1])])
            assert find_admissible(Q, conj, delta, "T").partition == conj


def test_find_admissible_reports_window():
    with pytest.raises(WindowExhausted):
        find_admissible(jordan(), P([((1,), 0), ((1,), 0)]), (0,), "S", window=3)


def test_bad_kind():
    with pytest.raises(InputError):
        enumerate_admissible(jordan(), (2,), 0, (0,), "X", 2)
