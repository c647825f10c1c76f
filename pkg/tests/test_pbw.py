import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from khall import pbw
from khall.checks import random_class
from khall.errors import StructuralError, WindowExhausted
from khall.kha import KClass, multiply_levi, tensor
from khall.partitions import Partition, enumerate_admissible
from khall.pbw import (GeneratorSet, commutator, decompose, filtration_level, generators,
                       in_filtration, p_space, reassemble, verify_bial, window_check,
                       window_filter, window_filter_single, window_generators)
from khall.quiver import gloop, jordan, q_zero, quiver_k
from khall.weights import ordered_partitions, partition_cocharacter

P = Partition.of


@pytest.mark.parametrize("w", range(-3, 4))
def test_generator_examples(w):
    J = jordan()
    assert generators(J, (1,), w, (0,)).weights == ((w,),)
    g = generators(J, (2,), w, (0,)).weights
    assert g == (((w // 2, w // 2),) if w % 2 == 0 else ())


def test_generators_k():
    K = quiver_k()
    assert generators(K, (1, 1), 1, (0, 0)).weights == ((0, 1), (1, 0))
    assert generators(K, (0, 0), 0, (0, 0)).weights == ((),)


def test_window_check_examples():
    J = jordan()
    for k in range(-2, 3):
        ok, wit = window_check(J, GeneratorSet((2,), 2 * k, (0,), ((k, k),)))
        assert ok and wit is None
        ok, wit = window_check(J, GeneratorSet((2,), 2 * k, (0,), ((k, k), (k + 1, k - 1))))
        assert not ok and wit[0] == (k + 1, k - 1) and wit[1] == partition_cocharacter(((1,), (1,)))
    assert window_check(J, GeneratorSet((2,), 0, (0,), ())) == (True, None)


@pytest.mark.parametrize("Q,d,w,delta", [
    (jordan(), (3,), 0, (0,)), (quiver_k(), (2, 1), 1, (F(1, 3), F(-1, 5))),
    (gloop(2), (2,), 1, (F(1, 2),)), (gloop(3), (2,), 0, (0,)), (q_zero(), (2,), 0, (0,)),
])
def test_window_and_polytope_routes_agree(Q, d, w, delta):
    assert generators(Q, d, w, delta).weights == window_generators(Q, d, w, delta)


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.sampled_from([0, 1]))
def test_window_kernel_matches_scalar_route(chi, which):
    Q = jordan() if which == 0 else gloop(2)
    d = (3,)
    chi = tuple(sorted(chi, reverse=True))
    delta = (F(1, 3),)
    expect = all(window_filter_single(Q, d, delta, chi, partition_cocharacter(p))
                 for p in ordered_partitions(d) if len(p) > 1)
    assert window_filter(Q, d, delta, [chi]) == [expect]


# -- decomposition -------------------------------------------------------------

def test_decompose_generator_is_trivial():
    J = jordan()
    x = KClass.basis((2,), (1, 1), 3)
    dec = decompose(J, x, (0,))
    assert list(dec.components) == [P([((2,), 2)])]
    assert multiply_levi(J, dec.components[P([((2,), 2)])][1]) == x


@pytest.mark.parametrize("w", range(-2, 3))
def test_decompose_jordan_example(w):
    J = jordan()
    x = KClass.basis((2,), (w + 1, w - 1))
    dec = decompose(J, x, (0,))
    assert set(dec.components) == {P([((1,), w + 1), ((1,), w - 1)]), P([((2,), 2 * w)])}
    assert reassemble(J, dec) == x


@pytest.mark.parametrize("name,d", [("jordan", (3,)), ("K", (2, 1)), ("2-loop", (2,)), ("0-loop", (2,)),
                                    ("K", (1, 0))])
def test_decompose_roundtrip_and_linearity(name, d):
    from khall.checks import builtin
    Q = builtin(name)
    rng = random.Random(4)
    for _ in range(5):
        x = random_class(rng, d, span=2)
        y = KClass(d, x.w, {k: rng.randint(1, 3) for k in list(x.terms)[:1]})
        dx, dy, dxy = decompose(Q, x, (0,) * Q.n), decompose(Q, y, (0,) * Q.n), decompose(Q, x + y, (0,) * Q.n)
        assert reassemble(Q, dx) == x
        for p in set(dx.components) | set(dy.components) | set(dxy.components):
            parts = []
            for dec in (dx, dy):
                if p in dec.components:
                    parts.append(dec.components[p][1])
            total = parts[0]
            for extra in parts[1:]:
                total = total + extra
            got = dxy.components.get(p)
            assert (got[1] if got else total.scaled(0)) == total


def test_decompose_window_exhausted():
    with pytest.raises(WindowExhausted):
        decompose(jordan(), KClass.basis((2,), (3, -3)), (0,), window=2)


def test_filtration_examples():
    J = jordan()
    assert filtration_level(J, KClass.basis((2,), (0, 0)), (0,)) == 1
    assert filtration_level(J, KClass.zero((2,), 0), (0,)) == 1
    lv = filtration_level(J, KClass.basis((2,), (1, -1)), (0,))
    assert lv == 2
    assert filtration_level(J, KClass.basis((2,), (3, -3)), (0,)) == 4
    assert in_filtration(J, KClass.zero((2,), 0), (0,), 0)
    assert not in_filtration(J, KClass.basis((2,), (1, -1)), (0,), 1)


def test_filtration_levels_need_connected_support():
    with pytest.raises(StructuralError):
        pbw.rp_values(q_zero(), (2,), 0, (0,), 2)


# -- P spaces ---------------------------------------------------------------------

@pytest.mark.parametrize("Q,d", [(jordan(), (1,)), (quiver_k(), (1, 0)), (q_zero(), (1,))])
def test_p_space_total_dimension_one(Q, d):
    for w in range(-2, 3):
        S = p_space(Q, d, w, (0,) * Q.n)
        assert S.dim == len(S.gens) == 1 and S.identity_holds


@pytest.mark.parametrize("k", range(-2, 3))
def test_p_space_jordan_d2(k):
    S = p_space(jordan(), (2,), 2 * k, (0,))
    assert len(S.gens) == 1
    assert S.dim + sum(S.invariant_dims.values()) == 1 and S.identity_holds
    assert S.dim == 0


@pytest.mark.parametrize("d", [(2,), (3,)])
def test_p_space_q_zero_vanishes(d):
    for w in range(-2, 3):
        S = p_space(q_zero(), d, w, (0,))
        assert S.dim == 0 and S.identity_holds


def test_p_space_k_generic_delta():
    S = p_space(quiver_k(), (1, 1), 1, (F(1, 3), F(-1, 5)))
    assert S.identity_holds


def test_p_space_k_zero_delta_odd_weight_fails_identity():
    # two generators but the conjugate T-pair carries a one dimensional invariant part
    S = p_space(quiver_k(), (1, 1), 1, (0, 0))
    assert len(S.gens) == 2 and not S.identity_holds


@pytest.mark.parametrize("Q,d,w", [(jordan(), (2,), 0), (jordan(), (2,), 1), (q_zero(), (2,), 0),
                                   (quiver_k(), (1, 1), 1)])
def test_p_space_window_stability(Q, d, w):
    delta = (0,) * Q.n if Q.name != "K" else (F(1, 3), F(-1, 5))
    a, b = p_space(Q, d, w, delta, 3), p_space(Q, d, w, delta, 4)
    assert (a.dim, a.invariant_dims) == (b.dim, b.invariant_dims)


def test_p_space_basis_classes_are_generators():
    S = p_space(jordan(), (1,), 2, (0,))
    assert S.basis_classes() == [KClass.basis((1,), (2,))]


# -- bialgebra and commutators ------------------------------------------------

@pytest.mark.parametrize("Q,d", [(jordan(), (2,)), (quiver_k(), (1, 1))])
def test_bialgebra_small(Q, d):
    delta = (0,) * Q.n
    for w in range(-2, 3):
        Ts = [A for A in enumerate_admissible(Q, d, w, delta, "T", 2) if len(A.partition) == 2]
        for A in Ts:
            for B in Ts:
                assert verify_bial(Q, A, B, delta, 2).ok


def test_commutator_of_one_dimensional_generators_vanishes():
    for Q in (jordan(), quiver_k(), gloop(2), gloop(3)):
        for v in range(-2, 3):
            for u in range(-2, 3):
                e = (1,) + (0,) * (Q.n - 1)
                f = (0,) * (Q.n - 1) + (1,)
                assert commutator(Q, KClass.basis(e, (v,)), KClass.basis(f, (u,))).is_zero()


def test_workers_env(monkeypatch):
    monkeypatch.setenv("KHALL_WORKERS", "2")
    assert pbw.workers() == 2
    monkeypatch.setenv("KHALL_WORKERS", "bogus")
    assert pbw.workers() == 1
    monkeypatch.setenv("KHALL_WORKERS", "2")
    items = list(range(80))
    assert pbw._pmap(abs, items) == items


@given(st.sampled_from(["jordan", "K", "2-loop", "3-loop"]), st.integers(0, 10_000))
def test_decompose_roundtrip_property(name, seed):
    from khall.checks import builtin, dim_vectors
    Q = builtin(name)
    rng = random.Random(seed)
    d = rng.choice(list(dim_vectors(Q.n, 3)))
    delta = tuple(F(rng.randint(-3, 3), 5) for _ in range(Q.n))
    x = random_class(rng, d, span=2)
    dec = decompose(Q, x, delta)
    assert reassemble(Q, dec) == x
    for p, (A, y) in dec.components.items():
        for key in y.terms:
            for chi, (e, v), dl in zip(key, p.parts, A.delta_A):
                assert chi in generators(Q, e, v, dl).weights
