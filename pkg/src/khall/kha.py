"""K_0-level Hall algebra in the basis of classes O x Gamma(chi)."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .branching import branch_lr
from .errors import InputError, PreconditionError
from .quiver import DimVector, Quiver, euler_form, offsets, rep_weights
from .weights import (Weight, act, blocks, is_dominant, levi_boundary_data, levi_slots,
                      normalize, pair, partition_cocharacter, positive_roots, rho, to_frac)


def _clean(terms: Mapping) -> dict:
    return {k: Fraction(v) for k, v in terms.items() if v != 0}


@dataclass(frozen=True, eq=False)
class KClass:
    d: DimVector
    w: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _clean(self.terms))

    def __eq__(self, other) -> bool:
        return (isinstance(other, KClass) and self.d == other.d and self.w == other.w
                and self.terms == other.terms)

    def __add__(self, other: "KClass") -> "KClass":
        _same_grading(self, other)
        acc = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            acc[k] += v
        return KClass(self.d, self.w, acc)

    def __sub__(self, other: "KClass") -> "KClass":
        return self + other.scaled(-1)

    def scaled(self, c) -> "KClass":
        return KClass(self.d, self.w, {k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def validate(self) -> None:
        for chi in self.terms:
            if len(chi) != sum(self.d) or sum(chi) != self.w or not is_dominant(chi, self.d):
                raise InputError("class term is not a dominant weight of the grading",
                                 {"d": list(self.d), "w": self.w, "chi": list(chi)})

    @staticmethod
    def basis(d: DimVector, chi: Sequence, coeff=1) -> "KClass":
        chi = tuple(int(x) for x in chi)
        return KClass(tuple(d), sum(chi), {chi: Fraction(coeff)})

    @staticmethod
    def zero(d: DimVector, w: int) -> "KClass":
        return KClass(tuple(d), w, {})


def _same_grading(a, b) -> None:
    if (a.d, a.w) != (b.d, b.w):
        raise InputError("grading mismatch", {"a": [list(a.d), a.w], "b": [list(b.d), b.w]})


@dataclass(frozen=True, eq=False)
class LeviKClass:
    parts: tuple[DimVector, ...]
    grads: tuple[int, ...]
    terms: dict = field(default_factory=dict)  # tuple of factor weights -> coefficient

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _clean(self.terms))

    def __eq__(self, other) -> bool:
        return (isinstance(other, LeviKClass) and self.parts == other.parts
                and self.grads == other.grads and self.terms == other.terms)

    def __add__(self, other: "LeviKClass") -> "LeviKClass":
        if (self.parts, self.grads) != (other.parts, other.grads):
            raise InputError("Levi grading mismatch", {})
        acc = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            acc[k] += v
        return LeviKClass(self.parts, self.grads, acc)

    def __sub__(self, other: "LeviKClass") -> "LeviKClass":
        return self + other.scaled(-1)

    def scaled(self, c) -> "LeviKClass":
        return LeviKClass(self.parts, self.grads, {k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    @property
    def d(self) -> DimVector:
        return tuple(map(sum, zip(*self.parts)))

    @staticmethod
    def zero(parts, grads) -> "LeviKClass":
        return LeviKClass(tuple(parts), tuple(grads), {})


def tensor(*classes: KClass) -> LeviKClass:
    """Levi class x_1 (x) ... (x) x_k."""
    terms: dict = {}
    for combo in product(*(c.items() for c in classes)):
        coeff = Fraction(1)
        for _, v in combo:
            coeff *= v
        terms[tuple(k for k, _ in combo)] = coeff
    return LeviKClass(tuple(c.d for c in classes), tuple(c.w for c in classes), terms)


def join(parts: Sequence[DimVector], factors: Sequence[Sequence]) -> Weight:
    """Place factor weights into the global slot layout of the Levi."""
    n = sum(map(sum, parts))
    out = [0] * n
    for slots, chi in zip(levi_slots(tuple(parts)), factors):
        for s, x in zip(slots, chi):
            out[s] = x
    return tuple(out)


def split(parts: Sequence[DimVector], chi: Sequence) -> tuple[Weight, ...]:
    return tuple(tuple(chi[s] for s in slots) for slots in levi_slots(tuple(parts)))


def delta_vector(d: DimVector, delta: Sequence) -> Weight:
    """Per-vertex rationals expanded to a Weyl-invariant weight."""
    if len(delta) != len(d):
        raise InputError("delta needs one value per vertex", {"d": list(d), "delta": list(map(str, delta))})
    return normalize(to_frac(delta[v]) for v, n in enumerate(d) for _ in range(n))


# -- n_lambda ----------------------------------------------------------------

def n_lambda(Q: Quiver, d: DimVector, lam: Sequence) -> Fraction:
    if sum(lam) != 0:
        raise InputError("cocharacter is not in SG(d)", {"lam": list(lam)})
    total = sum(p for p in (pair(lam, b) for b in rep_weights(Q, tuple(d))) if p > 0)
    for i, j in positive_roots(tuple(d)):
        total -= abs(lam[i] - lam[j])
    return Fraction(total)


# -- induction ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _starts(d: DimVector) -> tuple[int, ...]:
    return tuple(offsets(d)) + (sum(d),)


@lru_cache(maxsize=None)
def _iset(Q: Quiver, parts: tuple) -> np.ndarray:
    d = tuple(map(sum, zip(*parts)))
    lam = partition_cocharacter(parts)
    rows = [b for b in rep_weights(Q, d) if pair(lam, b) < 0]
    return np.array(rows, dtype=np.int64).reshape(len(rows), sum(d))


@lru_cache(maxsize=200_000)
def _induct_cached(Q: Quiver, parts: tuple, chi: tuple) -> tuple:
    d = tuple(map(sum, zip(*parts)))
    rho2 = np.array([int(2 * x) for x in rho(d)], dtype=np.int64)
    chi2 = 2 * np.array(chi, dtype=np.int64) + rho2
    out, sign, valid = _kernels.expand_subsets(chi2, _iset(Q, parts), _starts(d), rho2)
    out, sign = out[valid], sign[valid]
    if len(out) == 0:
        return ()
    keys, inv = np.unique(out, axis=0, return_inverse=True)
    coeff = np.bincount(inv.ravel(), weights=sign, minlength=len(keys)).astype(np.int64)
    return tuple((tuple(int(x) for x in k), int(c)) for k, c in zip(keys, coeff) if c)


def _levi_dominant(parts, chi) -> bool:
    return all(is_dominant(f, e) for e, f in zip(parts, split(parts, chi)))


def induct(Q: Quiver, parts: Sequence[DimVector], chi: Sequence, coeff=1) -> KClass:
    """Hall induction of O x Gamma_L(chi) from the Levi of `parts` (alternating
    subset sum over the weights pairing negatively with the cocharacter)."""
    parts = tuple(tuple(e) for e in parts if sum(e))
    chi = tuple(int(x) for x in chi)
    d = tuple(map(sum, zip(*parts)))
    if not _levi_dominant(parts, chi):
        raise PreconditionError("weight is not dominant for the Levi",
                                {"parts": [list(e) for e in parts], "chi": list(chi)})
    c = Fraction(coeff)
    if len(parts) == 1:
        return KClass(d, sum(chi), {chi: c})
    return KClass(d, sum(chi), {k: c * v for k, v in _induct_cached(Q, parts, chi)})


def multiply_levi(Q: Quiver, y: LeviKClass) -> KClass:
    """m_A: multiply out the factors of a Levi class (in factor order)."""
    keep = [i for i, e in enumerate(y.parts) if sum(e)]
    parts = tuple(y.parts[i] for i in keep)
    d = y.d
    acc: dict = defaultdict(Fraction)
    for key, c in y.items():
        chi = join(parts, [key[i] for i in keep]) if parts else ()
        if not parts:
            acc[()] += c
            continue
        for k, v in induct(Q, parts, chi, c).terms.items():
            acc[k] += v
    return KClass(d, sum(y.grads), acc)


def multiply(Q: Quiver, x: KClass, y: KClass) -> KClass:
    if len(x.d) != Q.n or len(y.d) != Q.n:
        raise InputError("vertex-set mismatch", {"x": list(x.d), "y": list(y.d)})
    return multiply_levi(Q, tensor(x, y))


# -- restriction and coproduct ----------------------------------------------

@lru_cache(maxsize=200_000)
def _restrict_cached(d: DimVector, chi: tuple, e: DimVector, f: DimVector) -> tuple:
    per_vertex = []
    for v, b in enumerate(blocks(d)):
        per_vertex.append(branch_lr(tuple(chi[i] for i in b), e[v], f[v]))
    out: dict = defaultdict(int)
    for combo in product(*per_vertex):
        mu = tuple(x for a, _, _ in combo for x in a)
        nu = tuple(x for _, b, _ in combo for x in b)
        m = 1
        for _, _, c in combo:
            m *= c
        out[(mu, nu)] += m
    return tuple(sorted(out.items()))


def restrict(d: DimVector, chi: Sequence, e: DimVector, f: DimVector) -> dict:
    """Branching of Gamma(chi) to G(e) x G(f): {(mu, nu): multiplicity}."""
    d, e, f = tuple(d), tuple(e), tuple(f)
    if tuple(a + b for a, b in zip(e, f)) != d:
        raise InputError("e + f must equal d", {"d": list(d), "e": list(e), "f": list(f)})
    return dict(_restrict_cached(d, tuple(int(x) for x in chi), e, f))


def restrict_class(x: KClass, e: DimVector, f: DimVector) -> dict:
    acc: dict = defaultdict(Fraction)
    for chi, c in x.items():
        for k, m in restrict(x.d, chi, e, f).items():
            acc[k] += c * m
    return {k: v for k, v in acc.items() if v}


def coproduct_window(Q: Quiver, d: DimVector, e: DimVector, f: DimVector, delta: Sequence) -> Fraction:
    """m = -n_lambda/2 - <lambda, delta> for the cocharacter of (e, f)."""
    lam = partition_cocharacter((tuple(e), tuple(f)))
    dv = delta_vector(d, delta)
    return -n_lambda(Q, d, lam) / 2 - pair(lam, dv)


def coproduct_component(Q: Quiver, x: KClass, A, delta: Sequence) -> LeviKClass:
    """Restrict to the Levi of A = ((e, v), (f, u)) and keep the lambda-weight m part."""
    (e, v), (f, u) = A
    e, f = tuple(e), tuple(f)
    d = x.d
    lam = partition_cocharacter((e, f))
    m = coproduct_window(Q, d, e, f, delta)
    terms: dict = defaultdict(Fraction)
    for (mu, nu), c in restrict_class(x, e, f).items():
        if pair(lam, join((e, f), (mu, nu))) == m:
            if (sum(mu), sum(nu)) != (v, u):
                raise PreconditionError("lambda-weight m does not match the gradings of A",
                                        {"A": [[list(e), v], [list(f), u]], "m": str(m)})
            terms[(mu, nu)] += c
    return LeviKClass((e, f), (v, u), terms)


# -- swaps -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _swap_data(Q: Quiver, e: DimVector, f: DimVector):
    w_ef, _, _, _ = levi_boundary_data(e, f, Q)
    _, _, _, L_fe = levi_boundary_data(f, e, Q)
    for slots in levi_slots((f, e)):
        for b in blocks(tuple(map(sum, zip(f, e)))):
            vals = {L_fe[s] for s in slots if s in b}
            if len(vals) > 1:  # pragma: no cover - L is a Levi character
                raise AssertionError("L_{f,e} is not constant on a Levi block")
    sign = -1 if euler_form(Q, e, f) % 2 else 1
    return w_ef, L_fe, sign


def swap(Q: Quiver, y: LeviKClass) -> LeviKClass:
    """sw(y) = (-1)^{chi(e,f)} w_{e,f}(y) q^{L_{f,e}} for a two-factor class."""
    if len(y.parts) != 2:
        raise InputError("swap needs a two-factor class", {"factors": len(y.parts)})
    e, f = y.parts
    w_ef, L, sign = _swap_data(Q, e, f)
    terms = {}
    for key, c in y.items():
        g = act(w_ef, join((e, f), key))
        g = tuple(int(a + b) for a, b in zip(g, L))
        terms[split((f, e), g)] = sign * c
    grads = tuple(sum(k) for k in next(iter(terms))) if terms else _swap_grads(Q, y)
    return LeviKClass((f, e), grads, terms)


def _swap_grads(Q: Quiver, y: LeviKClass) -> tuple[int, int]:
    e, f = y.parts
    _, L, _ = _swap_data(Q, e, f)
    Lf, Le = split((f, e), L)
    return (y.grads[1] + int(sum(Lf)), y.grads[0] + int(sum(Le)))


def swap_adjacent(Q: Quiver, y: LeviKClass, i: int) -> LeviKClass:
    """Apply sw to factors i, i+1."""
    k = len(y.parts)
    if not 0 <= i < k - 1:
        raise InputError("adjacent swap index out of range", {"i": i, "factors": k})
    pair_parts = (y.parts[i], y.parts[i + 1])
    terms: dict = defaultdict(Fraction)
    grads = None
    for key, c in y.items():
        sub = swap(Q, LeviKClass(pair_parts, (sum(key[i]), sum(key[i + 1])), {(key[i], key[i + 1]): c}))
        for (a, b), v in sub.items():
            terms[key[:i] + (a, b) + key[i + 2:]] += v
    parts = y.parts[:i] + (y.parts[i + 1], y.parts[i]) + y.parts[i + 2:]
    g2 = _swap_grads(Q, LeviKClass(pair_parts, (y.grads[i], y.grads[i + 1])))
    grads = y.grads[:i] + g2 + y.grads[i + 2:]
    return LeviKClass(parts, grads, terms)


def swap_perm(Q: Quiver, y: LeviKClass, order: Sequence[int]) -> LeviKClass:
    """sw_sigma: reorder factors so that new factor k is old factor order[k]."""
    order = list(order)
    if sorted(order) != list(range(len(y.parts))):
        raise InputError("order must be a permutation of the factors", {"order": order})
    cur = list(range(len(order)))
    target = {v: k for k, v in enumerate(order)}
    # bubble sort the current labels into the target positions
    changed = True
    while changed:
        changed = False
        for i in range(len(cur) - 1):
            if target[cur[i]] > target[cur[i + 1]]:
                y = swap_adjacent(Q, y, i)
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                changed = True
    return y


def levi_project(Q: Quiver, y: LeviKClass, k: int, e: DimVector, f: DimVector):
    """Split factor k of a Levi class along (e, f), for iterated restriction."""
    terms: dict = defaultdict(Fraction)
    for key, c in y.items():
        for (mu, nu), m in restrict(y.parts[k], key[k], e, f).items():
            terms[key[:k] + (mu, nu) + key[k + 1:]] += c * m
    parts = y.parts[:k] + (tuple(e), tuple(f)) + y.parts[k + 1:]
    return terms, parts


def as_terms(it: Iterable) -> dict:
    acc: dict = defaultdict(Fraction)
    for k, v in it:
        acc[k] += v
    return dict(acc)
