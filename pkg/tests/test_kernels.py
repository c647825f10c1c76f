import numpy as np
import pytest
from hypothesis import given, strategies as st

from khall import _kernels
from khall.kha import induct
from khall.quiver import gloop, jordan, offsets
from khall.weights import partition_cocharacter, rho

pytestmark = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _both(monkeypatch, fn, *args):
    out = {}
    for be in ("numpy", "numba"):
        monkeypatch.setenv("KHALL_BACKEND", be)
        assert _kernels.backend() == be
        out[be] = fn(*args)
    return out["numpy"], out["numba"]


@given(st.integers(1, 4), st.integers(0, 6), st.integers(0, 10_000))
def test_expand_subsets_backends_agree(n, m, seed):
    mp = pytest.MonkeyPatch()
    try:
        rng = np.random.default_rng(seed)
        rho2 = np.array([int(2 * x) for x in rho((n,))])
        chi2 = 2 * np.sort(rng.integers(-3, 4, size=n))[::-1] + rho2
        iset = rng.integers(-1, 2, size=(m, n))
        a, b = _both(mp, _kernels.expand_subsets, chi2, iset, np.array([0, n]), rho2)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)
    finally:
        mp.undo()


@given(st.integers(1, 40), st.integers(0, 10_000))
def test_window_scan_backends_agree(k, seed):
    mp = pytest.MonkeyPatch()
    try:
        rng = np.random.default_rng(seed)
        d = (3,)
        X = np.sort(rng.integers(-5, 6, size=(k, 3)), axis=1)[:, ::-1] * 2
        L = np.array([partition_cocharacter(p) for p in [((1,), (2,)), ((2,), (1,)), ((1,), (1,), (1,))]])
        lo = rng.integers(-12, 0, size=3)
        hi = rng.integers(0, 12, size=3)
        starts = np.array(list(offsets(d)) + [3])
        a, b = _both(mp, _kernels.window_scan, X, L, starts, lo, hi)
        assert np.array_equal(a, b)
    finally:
        mp.undo()


def test_induct_same_on_both_backends(monkeypatch):
    from khall.kha import _induct_cached
    results = []
    for be in ("numpy", "numba"):
        monkeypatch.setenv("KHALL_BACKEND", be)
        _induct_cached.cache_clear()
        results.append([induct(Q, parts, chi) for Q, parts, chi in [
            (jordan(), ((1,), (2,)), (2, 0, -1)), (gloop(2), ((1,), (1,)), (1, -1)),
            (jordan(), ((1,), (1,), (1,)), (0, 0, 0))]])
    _induct_cached.cache_clear()
    assert results[0] == results[1]


def test_unknown_backend_falls_back(monkeypatch):
    monkeypatch.setenv("KHALL_BACKEND", "cuda")
    assert _kernels.backend() == "numpy"
