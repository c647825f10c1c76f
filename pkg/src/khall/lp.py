"""Exact two-phase simplex with Bland's rule.

Solves  min c.x  s.t.  A x = b, x >= 0  over the rationals. Arithmetic runs on
gmpy2.mpq when available and on fractions.Fraction otherwise; results are
returned as Fractions. Besides a primal solution the solver reports row duals
(optimal case) or a Farkas vector y with y.A <= 0 and y.b > 0 (infeasible case).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def _q(x):
    if isinstance(x, Fraction):
        return _Q(x.numerator, x.denominator)
    return _Q(x)


@dataclass
class LPResult:
    status: str  # optimal | infeasible | unbounded
    x: list[Fraction] = field(default_factory=list)
    value: Fraction | None = None
    duals: list[Fraction] = field(default_factory=list)
    farkas: list[Fraction] = field(default_factory=list)


def solve(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    m, n = len(A), len(c)
    # flip rows so b >= 0; artificial columns n..n+m-1 carry B^-1
    flip = [1] * m
    T = []
    for i in range(m):
        row = [_q(v) for v in A[i]] + [_Q(0)] * m + [_q(b[i])]
        if row[-1] < 0:
            row = [-v for v in row]
            flip[i] = -1
        row[n + i] = _Q(1)
        T.append(row)
    basis = list(range(n, n + m))
    width = n + m + 1

    # phase 1: minimise the sum of artificials
    cost1 = [_Q(0)] * n + [_Q(1)] * m
    z = _reduced_row(T, basis, cost1, width)
    status = _run(T, basis, z, allowed=n + m)
    if status != "optimal":  # pragma: no cover - phase 1 is bounded
        raise RuntimeError("phase 1 did not terminate at an optimum")
    if -z[-1] > 0:
        y = [(cost1[n + i] - z[n + i]) * flip[i] for i in range(m)]
        return LPResult("infeasible", farkas=[_frac(v) for v in y])

    # push zero-level artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if T[r][j] != 0:
                    _pivot(T, basis, None, r, j)
                    break

    cost2 = [_q(v) for v in c] + [_Q(0)] * m
    z = _reduced_row(T, basis, cost2, width)
    status = _run(T, basis, z, allowed=n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [_Q(0)] * n
    for r, j in enumerate(basis):
        if j < n:
            x[j] = T[r][-1]
    # duals y = c_B B^-1; the artificial columns hold B^-1
    y = [(cost2[n + i] - z[n + i]) * flip[i] for i in range(m)]
    value = sum((cost2[j] * x[j] for j in range(n)), _Q(0))
    return LPResult("optimal", [_frac(v) for v in x], _frac(value), [_frac(v) for v in y])


def _reduced_row(T, basis, cost, width):
    z = list(cost) + [_Q(0)]
    for r, j in enumerate(basis):
        cj = cost[j]
        if cj != 0:
            row = T[r]
            for k in range(width):
                if row[k] != 0:
                    z[k] -= cj * row[k]
    return z


def _pivot(T, basis, z, r, q):
    prow = T[r]
    p = prow[q]
    if p != 1:
        prow = [v / p for v in prow]
        T[r] = prow
    nz = [k for k, v in enumerate(prow) if v != 0]
    for i, row in enumerate(T):
        if i != r:
            f = row[q]
            if f != 0:
                for k in nz:
                    row[k] -= f * prow[k]
    if z is not None:
        f = z[q]
        if f != 0:
            for k in nz:
                z[k] -= f * prow[k]
    basis[r] = q


def _run(T, basis, z, allowed):
    while True:
        q = next((j for j in range(allowed) if z[j] < 0), None)
        if q is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            a = row[q]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, z, best[1], q)
