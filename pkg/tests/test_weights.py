from fractions import Fraction as F
from itertools import permutations

from hypothesis import given, strategies as st
import pytest

from khall.errors import InputError
from khall.quiver import gloop, jordan, quiver_k
from khall.weights import (act, add, compose, dot_act, dot_straighten, inverse, is_dominant,
                           levi_boundary_data, nu, ordered_partitions, pair,
                           partition_cocharacter, refines, rho, tau)


def test_structure_weight_examples():
    assert rho((2,)) == (F(1, 2), F(-1, 2))
    assert tau((2,)) == (F(1, 2), F(1, 2))
    assert rho((1, 1)) == (0, 0)
    assert nu((2, 1)) == (1, 1, 1)
    assert sum(tau((2, 3))) == 1


def test_pair_examples():
    assert pair((1, 1), (F(3, 2), F(3, 2))) == 3
    assert pair((-1, 1), (1, -1)) == -2
    assert pair((0, 0, 0), (4, -1, 7)) == 0


def test_dot_straighten_examples():
    assert dot_straighten((0, 1), (2,)) is None
    assert dot_straighten((3, 1), (2,)) == ((3, 1), 0)
    assert dot_straighten((0, 2), (2,)) == ((1, 1), 1)
    with pytest.raises(InputError):
        dot_straighten((F(1, 2), 0), (2,))


def _brute_straighten(chi, n):
    # enumerate the dot orbit inside one block
    r = rho((n,))
    shifted = [x + y for x, y in zip(chi, r)]
    if len(set(shifted)) < n:
        return None
    best = None
    for p in permutations(range(n)):
        cand = tuple(shifted[p[i]] - r[i] for i in range(n))
        if all(cand[i] >= cand[i + 1] for i in range(n - 1)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
            best = (tuple(int(x) for x in cand), inv)
    return best


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_dot_straighten_matches_orbit_enumeration(chi):
    assert dot_straighten(tuple(chi), (len(chi),)) == _brute_straighten(chi, len(chi))


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3), st.permutations(range(3)))
def test_dot_straighten_equivariant(chi, perm):
    d = (3,)
    moved = dot_act(tuple(perm), tuple(chi), d)
    a, b = dot_straighten(tuple(chi), d), dot_straighten(moved, d)
    assert (a is None) == (b is None)
    if a:
        assert a[0] == b[0] and is_dominant(a[0], d)
        assert (a[1] - b[1]) % 2 == sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j]) % 2


@given(st.permutations(range(4)), st.permutations(range(4)), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_act_is_an_action(p, q, chi):
    p, q = tuple(p), tuple(q)
    assert act(compose(p, q), chi) == act(p, act(q, chi))
    assert act(inverse(p), act(p, chi)) == tuple(chi)


def test_ordered_partitions_count():
    assert len(ordered_partitions((3,))) == 4
    assert len(ordered_partitions((1, 1))) == 3
    assert ordered_partitions((0,)) == ((),)


def test_cocharacter_increases_along_partition():
    lam = partition_cocharacter(((1,), (1,)))
    assert lam == (-1, 1)
    lam = partition_cocharacter(((1,), (2,)))
    assert lam[0] < lam[1] == lam[2] and sum(lam) == 0


def test_refines_examples():
    a, b = (1,), (1,)
    assert refines([a, b], [(2,)])
    assert refines([(2,)], [(2,)])
    assert not refines([(2,)], [a, b])


def test_block_rotation_inverse():
    wef, _, _, _ = levi_boundary_data((1,), (1,), jordan())
    wfe, _, _, _ = levi_boundary_data((1,), (1,), jordan())
    assert wef == (1, 0) and compose(wef, wfe) == (0, 1)
    for e, f in [((1, 2), (2, 0)), ((0, 1), (1, 1))]:
        a = levi_boundary_data(e, f, quiver_k())[0]
        b = levi_boundary_data(f, e, quiver_k())[0]
        assert b == inverse(a)


@pytest.mark.parametrize("Q", [jordan(), quiver_k(), gloop(2)], ids=["jordan", "K", "2-loop"])
def test_weyl_rho_identity(Q):
    from itertools import product
    for e in product(range(3), repeat=Q.n):
        for f in product(range(3), repeat=Q.n):
            if not sum(e) or not sum(f):
                continue
            d = tuple(a + b for a, b in zip(e, f))
            wef = levi_boundary_data(e, f, Q)[0]
            rho_fe = levi_boundary_data(f, e, Q)[2]
            assert add(act(wef, rho(d)), tuple(-x for x in rho(d))) == tuple(-2 * x for x in rho_fe)


def test_levi_data_jordan_has_zero_L():
    _, N, r, L = levi_boundary_data((1,), (1,), jordan())
    assert L == (0, 0)
    assert N == tuple(2 * x for x in r)
