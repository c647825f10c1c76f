"""Restriction of GL(n) irreducibles to GL(p) x GL(q).

Two independent routes: Littlewood-Richardson tableau counting, and a brute
force expansion of Schur characters into monomials followed by peeling off
highest weights."""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product


def _partitions_inside(lam: tuple[int, ...], max_len: int):
    """Partitions mu with mu <= lam cell-wise and at most max_len parts (padded)."""
    n = min(len(lam), max_len)

    def rec(i, bound):
        if i == n:
            yield ()
            return
        for x in range(min(bound, lam[i]), -1, -1):
            for tail in rec(i + 1, x):
                yield (x,) + tail

    for mu in rec(0, lam[0] if lam else 0):
        yield mu + (0,) * (len(lam) - len(mu))


def _lr_fillings(lam: tuple[int, ...], mu: tuple[int, ...], max_value: int) -> Counter:
    """Count LR tableaux of shape lam/mu by content (entries <= max_value)."""
    rows = len(lam)
    cells = [(i, j) for i in range(rows) for j in range(lam[i] - 1, mu[i] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (max_value + 2)
    out: Counter = Counter()

    def rec(k):
        if k == len(cells):
            out[tuple(counts[1:max_value + 1])] += 1
            return
        i, j = cells[k]
        hi = min(max_value, i + 1)
        if (i, j + 1) in filling:
            hi = min(hi, filling[(i, j + 1)])
        lo = 1
        if i > 0 and j >= mu[i - 1] and j < lam[i - 1]:
            lo = filling[(i - 1, j)] + 1
        for v in range(lo, hi + 1):
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            filling[(i, j)] = v
            counts[v] += 1
            rec(k + 1)
            counts[v] -= 1
            del filling[(i, j)]

    rec(0)
    return out


@lru_cache(maxsize=None)
def branch_lr(chi: tuple[int, ...], p: int, q: int) -> tuple[tuple[tuple, tuple, int], ...]:
    """Branching of the GL(p+q) irreducible of highest weight chi to GL(p) x GL(q)
    as (mu, nu, multiplicity) triples."""
    n = len(chi)
    assert n == p + q
    if p == 0:
        return (((), chi, 1),)
    if q == 0:
        return ((chi, (), 1),)
    shift = -min(chi)
    lam = tuple(x + shift for x in chi)
    out = []
    for mu in _partitions_inside(lam, p):
        if any(mu[i] for i in range(p, n)):
            continue
        for content, c in sorted(_lr_fillings(lam, mu, q).items()):
            a = tuple(x - shift for x in mu[:p])
            b = tuple(x - shift for x in content)
            out.append((a, b, c))
    return tuple(sorted(out))


# -- brute force route ------------------------------------------------------

def _ssyt_monomials(lam: tuple[int, ...], nvars: int) -> Counter:
    """Monomial expansion of the Schur polynomial s_lam(x_1..x_nvars)."""
    cells = [(i, j) for i in range(len(lam)) for j in range(lam[i])]
    tab: dict = {}
    out: Counter = Counter()
    expo = [0] * nvars

    def rec(k):
        if k == len(cells):
            out[tuple(expo)] += 1
            return
        i, j = cells[k]
        lo = 0
        if j > 0:
            lo = tab[(i, j - 1)]
        if i > 0:
            lo = max(lo, tab[(i - 1, j)] + 1)
        for v in range(lo, nvars):
            tab[(i, j)] = v
            expo[v] += 1
            rec(k + 1)
            expo[v] -= 1
        tab.pop((i, j), None)

    rec(0)
    return out


def _character(chi: tuple[int, ...]) -> Counter:
    n = len(chi)
    if n == 0:
        return Counter({(): 1})
    shift = -min(chi)
    lam = tuple(x + shift for x in chi)
    return Counter({tuple(e - shift for e in k): v for k, v in _ssyt_monomials(lam, n).items()})


def branch_brute(chi: tuple[int, ...], p: int, q: int) -> tuple[tuple[tuple, tuple, int], ...]:
    ch: Counter = Counter()
    for mono, c in _character(chi).items():
        ch[(mono[:p], mono[p:])] += c
    out = []
    while ch:
        # a lexicographically largest monomial is a pair of highest weights
        a, b = max(k for k, v in ch.items() if v)
        c = ch[(a, b)]
        out.append((a, b, c))
        for (ma, ca), (mb, cb) in product(_character(a).items(), _character(b).items()):
            ch[(ma, mb)] -= c * ca * cb
        ch = Counter({k: v for k, v in ch.items() if v})
    return tuple(sorted(out))


def weyl_dimension(chi: tuple[int, ...]) -> int:
    from fractions import Fraction
    n = len(chi)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= Fraction(chi[i] - chi[j] + j - i, j - i)
    return int(num)
