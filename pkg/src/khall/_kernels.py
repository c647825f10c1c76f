"""Integer hot loops: subset expansion with dot straightening, and the lambda
window scan. Numba versions are used unless KHALL_BACKEND=numpy (or numba is
missing); the numpy versions are vectorized equivalents."""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def backend() -> str:
    want = os.environ.get("KHALL_BACKEND", "numba").lower()
    if want == "numba" and HAVE_NUMBA:
        return "numba"
    return "numpy"


# -- subset expansion -------------------------------------------------------
# chi2: doubled chi + rho (int64, n); iset: (m, n) weights; starts: block
# boundaries (nblocks + 1); rho2: doubled rho. For each subset I of the rows
# of iset returns the straightened weight (chi - sigma_I)^+, the sign
# (-1)^{|I| - l(I)} and a validity flag (False on a wall).

def _expand_numpy(chi2, iset, starts, rho2):
    m, n = iset.shape
    M = 1 << m
    masks = ((np.arange(M)[:, None] >> np.arange(m)[None, :]) & 1).astype(np.int64)
    v = chi2[None, :] - 2 * (masks @ iset)
    valid = np.ones(M, dtype=np.bool_)
    inv = np.zeros(M, dtype=np.int64)
    out = np.empty_like(v)
    for b in range(len(starts) - 1):
        lo, hi = starts[b], starts[b + 1]
        if hi - lo == 0:
            continue
        blk = v[:, lo:hi]
        for i in range(hi - lo):
            for j in range(i + 1, hi - lo):
                inv += blk[:, i] < blk[:, j]
                valid &= blk[:, i] != blk[:, j]
        out[:, lo:hi] = -np.sort(-blk, axis=1)
    out = (out - rho2[None, :]) // 2
    size = masks.sum(axis=1)
    sign = np.where((size - inv) % 2 == 0, 1, -1).astype(np.int64)
    return out, sign, valid


if HAVE_NUMBA:
    @njit(cache=True)
    def _expand_numba(chi2, iset, starts, rho2):  # pragma: no cover - compiled
        m, n = iset.shape
        M = 1 << m
        out = np.empty((M, n), dtype=np.int64)
        sign = np.empty(M, dtype=np.int64)
        valid = np.ones(M, dtype=np.bool_)
        v = np.empty(n, dtype=np.int64)
        for mask in range(M):
            for k in range(n):
                v[k] = chi2[k]
            size = 0
            for r in range(m):
                if (mask >> r) & 1:
                    size += 1
                    for k in range(n):
                        v[k] -= 2 * iset[r, k]
            inv = 0
            ok = True
            for b in range(len(starts) - 1):
                lo = starts[b]
                hi = starts[b + 1]
                # insertion sort, descending, counting inversions
                for i in range(lo + 1, hi):
                    x = v[i]
                    j = i - 1
                    while j >= lo and v[j] < x:
                        v[j + 1] = v[j]
                        j -= 1
                        inv += 1
                    if j >= lo and v[j] == x:
                        ok = False
                    v[j + 1] = x
            valid[mask] = ok
            for k in range(n):
                out[mask, k] = (v[k] - rho2[k]) // 2
            sign[mask] = 1 if (size - inv) % 2 == 0 else -1
        return out, sign, valid


def expand_subsets(chi2, iset, starts, rho2):
    chi2 = np.asarray(chi2, dtype=np.int64)
    iset = np.asarray(iset, dtype=np.int64).reshape(-1, len(chi2))
    starts = np.asarray(starts, dtype=np.int64)
    rho2 = np.asarray(rho2, dtype=np.int64)
    if backend() == "numba":
        return _expand_numba(chi2, iset, starts, rho2)
    return _expand_numpy(chi2, iset, starts, rho2)


# -- lambda window scan -----------------------------------------------------
# X: (K, n) candidate weights; L: (P, n) cocharacters; lo/hi: (P,) bounds.
# All inputs are integers (pre-scaled). Row k passes iff for every p the
# extreme values of <L_p, w X_k> over the Weyl orbit lie in [lo_p, hi_p].
# Extremes come from the rearrangement inequality per vertex block.

def _window_numpy(X, L, starts, lo, hi):
    K = X.shape[0]
    ok = np.ones(K, dtype=np.bool_)
    Xs = X.copy()
    for b in range(len(starts) - 1):
        a, c = starts[b], starts[b + 1]
        Xs[:, a:c] = np.sort(X[:, a:c], axis=1)
    for p in range(L.shape[0]):
        Ls = L[p].copy()
        for b in range(len(starts) - 1):
            a, c = starts[b], starts[b + 1]
            Ls[a:c] = np.sort(L[p, a:c])
        mx = Xs @ Ls
        mn = np.zeros(K, dtype=np.int64)
        for b in range(len(starts) - 1):
            a, c = starts[b], starts[b + 1]
            mn += Xs[:, a:c][:, ::-1] @ Ls[a:c]
        ok &= (mn >= lo[p]) & (mx <= hi[p])
    return ok


if HAVE_NUMBA:
    @njit(cache=True)
    def _sort_blocks(A, starts):  # pragma: no cover - compiled
        # ascending insertion sort of every row inside each block, in place
        for k in range(A.shape[0]):
            for b in range(len(starts) - 1):
                lo = starts[b]
                for i in range(lo + 1, starts[b + 1]):
                    x = A[k, i]
                    j = i - 1
                    while j >= lo and A[k, j] > x:
                        A[k, j + 1] = A[k, j]
                        j -= 1
                    A[k, j + 1] = x

    @njit(cache=True)
    def _window_numba(X, L, starts, lo, hi):  # pragma: no cover - compiled
        K, n = X.shape
        P = L.shape[0]
        ok = np.ones(K, dtype=np.bool_)
        Xs = X.copy()
        Ls = L.copy()
        _sort_blocks(Xs, starts)
        _sort_blocks(Ls, starts)
        nb = len(starts) - 1
        for k in range(K):
            for p in range(P):
                mx = 0
                mn = 0
                for b in range(nb):
                    a = starts[b]
                    c = starts[b + 1]
                    for i in range(c - a):
                        mx += Xs[k, a + i] * Ls[p, a + i]
                        mn += Xs[k, c - 1 - i] * Ls[p, a + i]
                if mn < lo[p] or mx > hi[p]:
                    ok[k] = False
                    break
        return ok


def window_scan(X, L, starts, lo, hi):
    X = np.asarray(X, dtype=np.int64)
    L = np.asarray(L, dtype=np.int64)
    starts = np.asarray(starts, dtype=np.int64)
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=np.bool_)
    if backend() == "numba":
        return _window_numba(X, L, starts, lo, hi)
    return _window_numpy(X, L, starts, lo, hi)
