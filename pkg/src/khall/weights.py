"""Weight lattice of G(d) = prod GL(d_i): structure weights, pairings, dot action,
ordered partitions and their antidominant cocharacters."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import InputError
from .quiver import DimVector, Quiver, offsets, rep_weights

Weight = tuple  # exact rationals (int or Fraction) in global slot order
Perm = tuple[int, ...]  # perm[i] = image slot of slot i

HALF = Fraction(1, 2)


def to_frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def normalize(chi: Sequence) -> Weight:
    """Store integral coordinates as int and the rest as Fraction."""
    out = []
    for x in chi:
        x = to_frac(x)
        out.append(x.numerator if x.denominator == 1 else x)
    return tuple(out)


def is_integral(chi: Sequence) -> bool:
    return all(to_frac(x).denominator == 1 for x in chi)


def add(a: Sequence, b: Sequence) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Weight:
    return tuple(c * x for x in a)


def blocks(d: DimVector) -> list[range]:
    off = offsets(d)
    return [range(o, o + n) for o, n in zip(off, d)]


@lru_cache(maxsize=None)
def rho(d: DimVector) -> Weight:
    out: list = []
    for n in d:
        out.extend(normalize([Fraction(n - 1 - 2 * i, 2) for i in range(n)]))
    return tuple(out)


def nu(d: DimVector) -> Weight:
    return (1,) * sum(d)


@lru_cache(maxsize=None)
def tau(d: DimVector) -> Weight:
    n = sum(d)
    if n == 0:
        raise InputError("tau is undefined for d = 0", {"d": list(d)})
    return normalize([Fraction(1, n)] * n)


def structure_weights(d: DimVector) -> tuple[Weight, Weight, Weight]:
    if sum(d) == 0:
        raise InputError("structure weights need d != 0", {"d": list(d)})
    return rho(d), nu(d), tau(d)


def pair(lam: Sequence, chi: Sequence):
    if len(lam) != len(chi):
        raise InputError("slot count mismatch in pairing", {"lam": len(lam), "chi": len(chi)})
    return sum((a * b for a, b in zip(lam, chi)), 0)


def is_dominant(chi: Sequence, d: DimVector) -> bool:
    return all(chi[i] >= chi[i + 1] for b in blocks(d) for i in b[:-1])


def dominant_sort(chi: Sequence, d: DimVector) -> Weight:
    out: list = []
    for b in blocks(d):
        out.extend(sorted((chi[i] for i in b), reverse=True))
    return tuple(out)


def dot_straighten(chi: Sequence, d: DimVector):
    """Return (chi_plus, length) with chi_plus dominant in the dot orbit of chi,
    or None when chi + rho lies on a wall."""
    if not is_integral(chi):
        raise InputError("dot straightening needs an integral weight",
                         {"chi": [str(x) for x in chi]})
    out: list[int] = []
    length = 0
    for b in blocks(d):
        n = len(b)
        # doubled chi + rho keeps everything integral
        v = [2 * int(chi[i]) + (n - 1 - 2 * k) for k, i in enumerate(b)]
        if len(set(v)) < n:
            return None
        length += sum(1 for i in range(n) for j in range(i + 1, n) if v[i] < v[j])
        v.sort(reverse=True)
        out.extend((x - (n - 1 - 2 * k)) // 2 for k, x in enumerate(v))
    return tuple(out), length


# -- Weyl group -------------------------------------------------------------

def act(perm: Perm, chi: Sequence) -> Weight:
    out = [0] * len(chi)
    for i, x in enumerate(chi):
        out[perm[i]] = x
    return tuple(out)


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def dot_act(perm: Perm, chi: Sequence, d: DimVector) -> Weight:
    r = rho(d)
    return sub(act(perm, add(chi, r)), r)


def is_block_perm(perm: Perm, d: DimVector) -> bool:
    return all(sorted(perm[i] for i in b) == list(b) for b in blocks(d))


# -- ordered partitions and cocharacters ------------------------------------

@lru_cache(maxsize=None)
def ordered_partitions(d: DimVector) -> tuple[tuple[DimVector, ...], ...]:
    """All sequences of nonzero dimension vectors summing to d."""
    if sum(d) == 0:
        return ((),)
    out = []
    for e in _sub_vectors(d):
        if sum(e) == 0:
            continue
        rest = tuple(a - b for a, b in zip(d, e))
        for tail in ordered_partitions(rest):
            out.append((e,) + tail)
    return tuple(out)


def _sub_vectors(d: DimVector):
    if not d:
        yield ()
        return
    for x in range(d[0] + 1):
        for tail in _sub_vectors(d[1:]):
            yield (x,) + tail


@lru_cache(maxsize=None)
def levi_slots(parts: tuple[DimVector, ...]) -> tuple[tuple[int, ...], ...]:
    """Global slots occupied by each Levi factor: inside every vertex block the
    factors take consecutive runs in partition order."""
    d = tuple(map(sum, zip(*parts)))
    off = offsets(d)
    out = []
    used = [0] * len(d)
    for e in parts:
        s = []
        for v, x in enumerate(e):
            s.extend(range(off[v] + used[v], off[v] + used[v] + x))
            used[v] += x
        out.append(tuple(s))
    return tuple(out)


@lru_cache(maxsize=None)
def partition_cocharacter(parts: tuple[DimVector, ...]) -> tuple[int, ...]:
    """Primitive antidominant cocharacter of SG(d) inducing the ordered partition."""
    dims = [sum(e) for e in parts]
    D = sum(dims)
    S = sum((i + 1) * n for i, n in enumerate(dims))
    c = [(i + 1) * D - S for i in range(len(parts))]
    g = 0
    for x in c:
        g = gcd(g, x)
    if g:
        c = [x // g for x in c]
    out = [0] * D
    for val, slots in zip(c, levi_slots(parts)):
        for s in slots:
            out[s] = val
    return tuple(out)


def refines(fine: Sequence[DimVector], coarse: Sequence[DimVector]) -> bool:
    """True iff consecutive runs of `fine` sum to the parts of `coarse`."""
    i = 0
    for part in coarse:
        part = tuple(part)
        acc = tuple(0 for _ in part)
        while acc != part:
            if i >= len(fine):
                return False
            acc = tuple(a + b for a, b in zip(acc, fine[i]))
            i += 1
            if any(a > b for a, b in zip(acc, part)):
                return False
    return i == len(fine)


@lru_cache(maxsize=None)
def positive_roots(d: DimVector) -> tuple[tuple[int, int], ...]:
    """Slot pairs (i, j), i < j in one block, standing for b_i - b_j."""
    return tuple((i, j) for b in blocks(d) for i in b for j in b if i < j)


def root_vector(n: int, i: int, j: int) -> tuple[int, ...]:
    v = [0] * n
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def rho_negative(d: DimVector, lam: Sequence) -> Weight:
    """Half the sum of positive roots pairing negatively with lam."""
    n = sum(d)
    acc = [Fraction(0)] * n
    for i, j in positive_roots(d):
        if lam[i] - lam[j] < 0:
            acc[i] += HALF
            acc[j] -= HALF
    return normalize(acc)


def weight_sum(ws, n: int) -> Weight:
    acc = [0] * n
    for w in ws:
        for k, x in enumerate(w):
            acc[k] += x
    return tuple(acc)


def block_rotation(e: DimVector, f: DimVector) -> Perm:
    """w_{e,f}: inside each vertex block i -> i + f for i <= e, else i - e."""
    d = tuple(a + b for a, b in zip(e, f))
    off = offsets(d)
    perm = [0] * sum(d)
    for v in range(len(d)):
        for i in range(d[v]):
            j = i + f[v] if i < e[v] else i - e[v]
            perm[off[v] + i] = off[v] + j
    return tuple(perm)


def levi_boundary_data(e: DimVector, f: DimVector, Q: Quiver):
    """(w_ef, N_ef, rho_ef, L_ef) for the two-part partition (e, f)."""
    if len(e) != Q.n or len(f) != Q.n:
        raise InputError("dimension mismatch", {"e": list(e), "f": list(f)})
    d = tuple(a + b for a, b in zip(e, f))
    lam = partition_cocharacter((e, f)) if sum(e) and sum(f) else (0,) * sum(d)
    n = sum(d)
    N = weight_sum((b for b in rep_weights(Q, d) if pair(lam, b) < 0), n)
    r = rho_negative(d, lam)
    L = normalize(sub(N, scale(2, r)))
    return block_rotation(e, f), N, r, L
