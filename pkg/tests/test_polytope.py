from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.optimize import linprog

from khall.errors import PreconditionError, StructuralError
from khall.kha import delta_vector
from khall.polytope import (face_cocharacter, forced_set, in_scaled_region, on_face,
                            p_invariant, positive_sum, r_invariant, r_witness, rp_invariant,
                            standard_form, verify_membership)
from khall.quiver import Quiver, gloop, jordan, q_zero, quiver_k, rep_weights
from khall.weights import HALF, add, dominant_sort, pair, partition_cocharacter, rho, scale, tau

QUIVERS = {"jordan": jordan(), "K": quiver_k(), "2-loop": gloop(2)}
CASES = [("jordan", (2,)), ("jordan", (3,)), ("K", (1, 1)), ("K", (2, 1)), ("2-loop", (2,))]


def scipy_r(Q, d, chi):
    """Float oracle: min r with chi = sum c_b b + c tau, -r <= c_b <= 0."""
    W = np.array(rep_weights(Q, d), dtype=float).T  # n x m
    n, m = W.shape
    t = np.array([float(x) for x in tau(d)])[:, None]
    # variables c (m), c_tau, r ; minimise r
    A_eq = np.hstack([W, t, np.zeros((n, 1))])
    b_eq = np.array([float(x) for x in chi])
    A_ub = np.vstack([np.hstack([-np.eye(m), np.zeros((m, 1)), -np.ones((m, 1))])])
    b_ub = np.zeros(m)
    bounds = [(None, 0)] * m + [(None, None), (0, None)]
    cost = np.zeros(m + 2)
    cost[-1] = 1
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    assert res.status == 0
    return res.fun


def test_membership_examples():
    J = jordan()
    mem = in_scaled_region(J, (2,), (0, 0), 0)
    assert mem.feasible and all(c == 0 for c in mem.coeffs)
    five_tau = scale(5, tau((2,)))
    mem = in_scaled_region(J, (2,), five_tau, 0)
    assert mem.feasible and mem.tau_coeff == 5
    no = in_scaled_region(J, (2,), (1, -1), HALF)
    assert not no.feasible and verify_membership(J, (2,), (1, -1), HALF, no)
    yes = in_scaled_region(J, (2,), (1, -1), 1)
    assert yes.feasible and verify_membership(J, (2,), (1, -1), 1, yes)
    W = rep_weights(J, (2,))
    assert yes.coeffs[W.index((-1, 1))] == -1


@pytest.mark.parametrize("name,d", CASES)
def test_membership_certificates(name, d):
    Q = QUIVERS[name]
    rng = np.random.default_rng(sum(d))
    for _ in range(10):
        chi = tuple(int(x) for x in rng.integers(-3, 4, size=sum(d)))
        r = F(int(rng.integers(0, 5)), 2)
        mem = in_scaled_region(Q, d, chi, r)
        assert verify_membership(Q, d, chi, r, mem)
        assert mem.feasible == (r_invariant(Q, d, chi) <= r)


def test_r_examples():
    J = jordan()
    assert r_invariant(J, (2,), scale(3, tau((2,)))) == 0
    assert r_invariant(J, (2,), (1, -1)) == 1
    for a in range(-3, 4):
        for b in range(-3, a + 1):
            assert r_invariant(J, (2,), add((a, b), rho((2,)))) == F(a - b + 1, 2)


@pytest.mark.parametrize("name,d", CASES)
def test_r_matches_scipy_oracle(name, d):
    Q = QUIVERS[name]
    rng = np.random.default_rng(7)
    for _ in range(25):
        chi = tuple(F(int(x), int(y)) for x, y in zip(rng.integers(-6, 7, size=sum(d)),
                                                      rng.integers(1, 4, size=sum(d))))
        assert abs(float(r_invariant(Q, d, chi)) - scipy_r(Q, d, chi)) < 1e-7


def test_r_witness_is_optimal_certificate():
    K = quiver_k()
    w = r_witness(K, (2, 1), (2, -1, -1))
    assert all(-w.r <= c <= 0 for c in w.coeffs)


def test_structural_errors():
    with pytest.raises(StructuralError):
        r_invariant(q_zero(), (2,), (1, -1))
    assert r_invariant(q_zero(), (2,), (1, 1)) == 0
    two_jordans = Quiver(("a", "b"), ((0, 0), (1, 1)))
    with pytest.raises(StructuralError):
        r_invariant(two_jordans, (1, 1), (1, -1))


def test_p_example():
    assert p_invariant(jordan(), (2,), (1, -1)) == 1
    with pytest.raises(PreconditionError):
        p_invariant(jordan(), (2,), (1, -1), r=F(1, 2))
    with pytest.raises(PreconditionError):
        p_invariant(jordan(), (2,), (0, 0))


weights3 = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


@given(st.sampled_from(["jordan", "K"]), weights3)
def test_p_dual_equals_enumerate(name, chi):
    Q = QUIVERS[name]
    d = (3,) if name == "jordan" else (2, 1)
    chi = tuple(chi)
    assume(r_invariant(Q, d, chi) > 0)
    assert p_invariant(Q, d, chi, method="dual") == p_invariant(Q, d, chi, method="enumerate")


@given(st.sampled_from(["jordan", "K", "2-loop"]), weights3)
def test_forced_set_is_saturated_by_a_witness(name, chi):
    Q = QUIVERS[name]
    d = {"jordan": (3,), "K": (2, 1), "2-loop": (3,)}[name]
    chi = tuple(chi)
    r = r_invariant(Q, d, chi)
    assume(r > 0)
    J = forced_set(Q, d, chi)
    W = rep_weights(Q, d)
    # pushing any forced coefficient off -r is impossible: r grows for chi - eps * beta
    eps = F(1, 97)
    for i in J:
        moved = tuple(x - eps * y for x, y in zip(chi, W[i]))
        assert r_invariant(Q, d, moved) >= r


@given(st.sampled_from(["jordan", "K"]), weights3, st.integers(-5, 5))
def test_rp_tau_invariance(name, chi, c):
    Q = QUIVERS[name]
    d = (3,) if name == "jordan" else (2, 1)
    chi = tuple(chi)
    assert rp_invariant(Q, d, chi) == rp_invariant(Q, d, add(chi, scale(F(c, 3), tau(d))))


def test_face_examples():
    J = jordan()
    for a, b in [(1, 0), (3, -1), (2, 2)]:
        chi = add((a, b), rho((2,)))
        assert face_cocharacter(J, (2,), chi) == ((1,), (1,))


@pytest.mark.parametrize("name,d", CASES)
def test_face_saturation_and_perturbation(name, d):
    Q = QUIVERS[name]
    rng = np.random.default_rng(3)
    for _ in range(15):
        chi = tuple(sorted((int(x) for x in rng.integers(-3, 4, size=sum(d))), reverse=True))
        chi = add(chi, rho(d))
        r = r_invariant(Q, d, chi)
        if r == 0:
            continue
        parts = face_cocharacter(Q, d, chi)
        assert on_face(Q, d, chi, r, parts)
        lam = partition_cocharacter(parts)
        # the face equation pins every lambda-positive coefficient at -r
        assert pair(lam, chi) == -r * pair(lam, positive_sum(Q, d, lam))
        for beta in rep_weights(Q, d):
            if pair(lam, beta) > 0:
                moved = tuple(x - F(1, 50) * y for x, y in zip(chi, beta))
                assert r_invariant(Q, d, moved) > r


def test_standard_form_examples():
    J = jordan()
    sf = standard_form(J, (2,), add((3, 3), rho((2,))))
    assert sf.nodes == () and sf.psi == add((3, 3), rho((2,)))
    for a, b in [(1, 0), (2, -1), (3, 1)]:
        chi = add((a, b), rho((2,)))
        sf = standard_form(J, (2,), chi)
        assert len(sf.nodes) == 1 and sf.nodes[0].r == F(a - b + 1, 2)
        assert sf.reconstruct() == chi
        assert r_invariant(J, (1,), (sf.psi[0],)) <= HALF


@pytest.mark.parametrize("name,d", CASES + [("K", (2, 2)), ("jordan", (4,))])
def test_standard_form_reconstruction_and_descent(name, d):
    Q = QUIVERS[name]
    rng = np.random.default_rng(11)
    for _ in range(12):
        chi = dominant_sort(tuple(int(x) for x in rng.integers(-4, 5, size=sum(d))), d)
        chi = add(add(chi, rho(d)), delta_vector(d, (F(1, 3),) * Q.n))
        sf = standard_form(Q, d, chi)
        assert sf.reconstruct() == tuple(F(x) for x in chi)
        by_index = dict(enumerate(sf.nodes))
        for nd in sf.nodes:
            assert nd.r is None or nd.r > HALF
            if nd.parent is not None and nd.r is not None and by_index[nd.parent].r is not None:
                assert by_index[nd.parent].r > nd.r
