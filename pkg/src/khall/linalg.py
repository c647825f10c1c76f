"""Exact rank, kernel and solving over Q by fraction-free (Bareiss) elimination."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence]


def _integer_rows(M: Matrix) -> list[list[int]]:
    out = []
    for row in M:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def echelon(M: Matrix, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form and pivot columns (Bareiss elimination)."""
    A = _integer_rows(M)
    if not A:
        return [], []
    n = ncols if ncols is not None else len(A[0])
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, len(A)):
            a = A[i][c]
            A[i] = [(piv * x - a * y) // prev for x, y in zip(A[i], A[r])]
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M: Matrix, ncols: int | None = None) -> int:
    return len(echelon(M, ncols)[1])


def kernel(M: Matrix, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : M x = 0}, one vector per free column, primitive integer entries."""
    if not M:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    E, piv = echelon(M, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in reversed(list(zip(E, piv))):
            s = sum((row[k] * x[k] for k in range(c + 1, ncols)), Fraction(0))
            x[c] = -s / Fraction(row[c])
        den = 1
        for v in x:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in x]
        g = 0
        for v in ints:
            g = gcd(g, v)
        basis.append(tuple(Fraction(v // g) for v in ints))
    return basis


def transpose(M: Matrix, nrows: int | None = None) -> list[list]:
    if not M:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*M)]


def solve(B_cols: Sequence[Sequence], y: Sequence) -> list[Fraction] | None:
    """Coefficients a with sum a_i B_cols[i] = y, or None if y is not in the span.
    Requires the columns to be independent for uniqueness."""
    n = len(y)
    k = len(B_cols)
    aug = [[Fraction(B_cols[j][i]) for j in range(k)] + [Fraction(y[i])] for i in range(n)]
    # plain Gauss-Jordan on rationals: sizes here are small
    rows = aug
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * z for x, z in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    a = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        a[c] = rows[i][k]
    return a


def matmul(A: Matrix, B: Matrix) -> list[list[Fraction]]:
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    return [[sum((Fraction(a) * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]
