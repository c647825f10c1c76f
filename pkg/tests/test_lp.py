from fractions import Fraction as F

import numpy as np
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from khall import lp


def test_simple_optimum():
    # min -x0 - x1 s.t. x0 + x1 + s = 1
    res = lp.solve([-1, -1, 0], [[1, 1, 1]], [1])
    assert res.status == "optimal" and res.value == -1


def test_infeasible_has_farkas():
    A, b = [[1, 1]], [-1]
    res = lp.solve([0, 0], A, b)
    assert res.status == "infeasible"
    y = res.farkas
    assert all(sum(y[i] * A[i][j] for i in range(1)) <= 0 for j in range(2))
    assert sum(a * c for a, c in zip(y, b)) > 0


def test_unbounded():
    res = lp.solve([-1, 0], [[1, -1]], [0])
    assert res.status == "unbounded"


def test_exact_rational_value():
    # min x0 s.t. 3 x0 - x1 = 1  -> x0 = 1/3
    res = lp.solve([1, 0], [[3, -1]], [1])
    assert res.value == F(1, 3)


@given(st.integers(1, 3), st.integers(2, 5), st.integers(0, 10_000))
def test_matches_scipy(m, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(m, n))
    b = rng.integers(-3, 4, size=m)
    c = rng.integers(-3, 4, size=n)
    # box the variables so the scipy oracle sees the same bounded problem
    A_box = np.hstack([np.vstack([A, np.eye(n, dtype=int)]),
                       np.vstack([np.zeros((m, n), dtype=int), np.eye(n, dtype=int)])])
    b_box = np.concatenate([b, np.full(n, 4)])
    c_box = np.concatenate([c, np.zeros(n, dtype=int)])
    ours = lp.solve(c_box.tolist(), A_box.tolist(), b_box.tolist())
    ref = linprog(c_box, A_eq=A_box, b_eq=b_box, bounds=(0, None), method="highs")
    if ref.status == 2:
        assert ours.status == "infeasible"
    else:
        assert ref.status == 0 and ours.status == "optimal"
        assert abs(float(ours.value) - ref.fun) < 1e-7
        x = ours.x
        for row, rhs in zip(A_box.tolist(), b_box.tolist()):
            assert sum(F(a) * v for a, v in zip(row, x)) == rhs
        assert sum(F(a) * v for a, v in zip(c_box.tolist(), x)) == ours.value
