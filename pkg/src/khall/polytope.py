"""The region W = sum of segments [0, beta] over the weights of R(d), plus the
line R.tau_d: exact membership, the (r, p) invariants, face cocharacters and
the standard form."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import lp
from .errors import NonUniqueFace, PreconditionError, StructuralError
from .quiver import DimVector, Quiver, components, is_qzero, offsets, rep_weights
from .weights import (HALF, Weight, normalize, ordered_partitions, pair,
                      partition_cocharacter, refines, levi_slots, tau, to_frac)


@dataclass(frozen=True)
class Membership:
    feasible: bool
    coeffs: tuple = ()  # c_beta in [-r, 0], in rep_weights order
    tau_coeff: Fraction | None = None
    farkas: tuple = ()  # y with y.beta >= 0 ... see separating_value


def _centered(d: DimVector, chi: Sequence) -> tuple[Fraction, Weight]:
    c = sum((to_frac(x) for x in chi), Fraction(0))
    t = tau(d)
    return c, tuple(to_frac(x) - c * y for x, y in zip(chi, t))


def _check_shape(Q: Quiver, d: DimVector, chi: Sequence) -> None:
    if len(chi) != sum(d):
        raise PreconditionError("weight length does not match d",
                                {"d": list(d), "len": len(chi)})


def _structural(Q: Quiver, d: DimVector, chi: Sequence) -> None:
    if len(components(Q, d)) > 1:
        raise StructuralError("support of d is disconnected; use the per-component form",
                              {"d": list(d)})
    if is_qzero(Q, d) and sum(d) > 1:
        _, centered = _centered(d, chi)
        if any(centered):
            raise StructuralError("for a loopless single vertex the region is the tau line",
                                  {"d": list(d)})


def in_scaled_region(Q: Quiver, d: DimVector, chi: Sequence, r) -> Membership:
    """Decide chi = sum c_beta beta + c tau with -r <= c_beta <= 0."""
    d = tuple(d)
    _check_shape(Q, d, chi)
    r = to_frac(r)
    W = rep_weights(Q, d)
    m, n = len(W), sum(d)
    c, centered = _centered(d, chi)
    # variables y_beta = -c_beta in [0, r], slack s_beta; rows: n-1 coordinates, m bounds
    A, b = [], []
    for k in range(n - 1):
        A.append([w[k] for w in W] + [0] * m)
        b.append(-centered[k])
    for i in range(m):
        row = [0] * (2 * m)
        row[i] = row[m + i] = 1
        A.append(row)
        b.append(r)
    if not A:
        return Membership(True, (), c)
    res = lp.solve([0] * (2 * m), A, b)
    if res.status != "optimal":
        # lift the Farkas vector back to coordinates: functional on the first n-1 rows
        return Membership(False, farkas=tuple(res.farkas))
    return Membership(True, tuple(-v for v in res.x[:m]), c)


def verify_membership(Q: Quiver, d: DimVector, chi: Sequence, r, mem: Membership) -> bool:
    """Check a witness by substitution, or a Farkas vector by its sign conditions."""
    W = rep_weights(Q, d)
    r = to_frac(r)
    if mem.feasible:
        if any(v > 0 or v < -r for v in mem.coeffs):
            return False
        t = tau(d)
        recon = [mem.tau_coeff * x for x in t]
        for cb, w in zip(mem.coeffs, W):
            for k, x in enumerate(w):
                recon[k] += cb * x
        return all(to_frac(a) == b for a, b in zip(chi, recon))
    y = mem.farkas
    m, n = len(W), sum(d)
    _, centered = _centered(d, chi)
    # columns of the system: y_beta columns and slack columns
    cols = [[w[k] for k in range(n - 1)] + [1 if i == j else 0 for j in range(m)]
            for i, w in enumerate(W)]
    cols += [[0] * (n - 1) + [1 if i == j else 0 for j in range(m)] for i in range(m)]
    rhs = [-x for x in centered[: n - 1]] + [r] * m
    return (all(sum(a * b for a, b in zip(y, col)) <= 0 for col in cols)
            and sum(a * b for a, b in zip(y, rhs)) > 0)


@dataclass(frozen=True)
class RWitness:
    r: Fraction
    coeffs: tuple
    tau_coeff: Fraction
    dual: tuple  # optimal dual, certifies minimality


def r_witness(Q: Quiver, d: DimVector, chi: Sequence) -> RWitness:
    d = tuple(d)
    _check_shape(Q, d, chi)
    _structural(Q, d, chi)
    W = rep_weights(Q, d)
    m, n = len(W), sum(d)
    c, centered = _centered(d, chi)
    if n == 1 or not any(centered):
        return RWitness(Fraction(0), (Fraction(0),) * m, c, ())
    A, b = [], []
    for k in range(n - 1):
        A.append([w[k] for w in W] + [0] * m + [0])
        b.append(-centered[k])
    for i in range(m):
        row = [0] * (2 * m + 1)
        row[i] = row[m + i] = 1
        row[-1] = -1
        A.append(row)
        b.append(0)
    res = lp.solve([0] * (2 * m) + [1], A, b)
    if res.status != "optimal":
        raise StructuralError("weight is not in the span of the region",
                              {"d": list(d), "chi": [str(x) for x in chi]})
    return RWitness(res.value, tuple(-v for v in res.x[:m]), c, tuple(res.duals))


@lru_cache(maxsize=200_000)
def _r_cached(Q: Quiver, d: DimVector, chi: tuple) -> Fraction:
    return r_witness(Q, d, chi).r


def r_invariant(Q: Quiver, d: DimVector, chi: Sequence) -> Fraction:
    return _r_cached(Q, tuple(d), normalize(chi))


def _slack_program(Q, d, chi, r, J: frozenset):
    """max t s.t. witness at level r with c_beta >= -r + t off J."""
    W = rep_weights(Q, d)
    m, n = len(W), sum(d)
    _, centered = _centered(d, chi)
    # variables: y (m), s (m), t
    A, b = [], []
    for k in range(n - 1):
        A.append([w[k] for w in W] + [0] * m + [0])
        b.append(-centered[k])
    for i in range(m):
        row = [0] * (2 * m + 1)
        row[i] = row[m + i] = 1
        if i not in J:
            row[-1] = 1
        A.append(row)
        b.append(r)
    res = lp.solve([0] * (2 * m) + [-1], A, b)
    if res.status != "optimal":
        raise PreconditionError("no witness at the given level; r is not the r-invariant",
                                {"r": str(r)})
    t = res.x[-1]
    duals = res.duals[n - 1:]
    return t, duals


def p_invariant(Q: Quiver, d: DimVector, chi: Sequence, r=None, method: str = "dual") -> int:
    return len(forced_set(Q, d, chi, r, method))


def forced_set(Q: Quiver, d: DimVector, chi: Sequence, r=None, method: str = "dual") -> frozenset:
    """A smallest set J of weight indices saturated (c_beta = -r) by some witness.

    method="dual" grows J from the duals of the slack program: a bound row with
    a negative dual is saturated in every witness. method="enumerate" scans
    candidate sets by increasing size."""
    d = tuple(d)
    chi = normalize(chi)
    rr = r_invariant(Q, d, chi)
    if r is not None and to_frac(r) != rr:
        raise PreconditionError("r is not the r-invariant of chi", {"r": str(r), "r_min": str(rr)})
    if rr == 0:
        raise PreconditionError("p is defined for r > 0", {})
    return _forced_cached(Q, d, chi, method)


@lru_cache(maxsize=200_000)
def _forced_cached(Q, d, chi, method) -> frozenset:
    rr = r_invariant(Q, d, chi)
    m = len(rep_weights(Q, d))
    if method == "enumerate":
        for size in range(m + 1):
            for J in combinations(range(m), size):
                t, _ = _slack_program(Q, d, chi, rr, frozenset(J))
                if t > 0:
                    return frozenset(J)
        raise AssertionError("unreachable: J = all weights always has t > 0")
    J: set[int] = set()
    while True:
        t, u = _slack_program(Q, d, chi, rr, frozenset(J))
        if t > 0:
            return frozenset(J)
        new = {i for i in range(m) if i not in J and u[i] < 0}
        assert new, "slack program at t = 0 must have a negative bound dual"
        J |= new


def rp_invariant(Q: Quiver, d: DimVector, chi: Sequence) -> tuple[Fraction, int]:
    r = r_invariant(Q, d, chi)
    if r == 0:
        return r, 0
    return r, p_invariant(Q, d, chi)


# -- faces ------------------------------------------------------------------

def positive_sum(Q: Quiver, d: DimVector, lam: Sequence) -> Weight:
    """N^{lam > 0}: sum of the weights of R(d) pairing positively with lam."""
    n = sum(d)
    acc = [0] * n
    for w in rep_weights(Q, d):
        if pair(lam, w) > 0:
            for k, x in enumerate(w):
                acc[k] += x
    return tuple(acc)


def on_face(Q: Quiver, d: DimVector, chi: Sequence, r, parts) -> bool:
    lam = partition_cocharacter(parts)
    return pair(lam, chi) + r * pair(lam, positive_sum(Q, d, lam)) == 0


def face_cocharacter(Q: Quiver, d: DimVector, chi: Sequence, r=None) -> tuple:
    """Ordered partition whose cocharacter cuts out the face containing chi in
    its relative interior."""
    d = tuple(d)
    chi = normalize(chi)
    rr = r_invariant(Q, d, chi)
    if r is not None and to_frac(r) != rr:
        raise PreconditionError("r is not the r-invariant of chi", {"r": str(r), "r_min": str(rr)})
    if rr == 0:
        raise PreconditionError("face cocharacter needs r > 0", {})
    return _face_cached(Q, d, chi, rr)


@lru_cache(maxsize=100_000)
def _face_cached(Q, d, chi, r):
    S = [p for p in ordered_partitions(d) if len(p) > 1 and on_face(Q, d, chi, r, p)]
    maximal = [p for p in S if not any(q != p and refines(q, p) for q in S)]
    if len(maximal) != 1:
        raise NonUniqueFace("face cocharacter is not unique",
                            {"chi": [str(x) for x in chi], "candidates": [list(map(list, p)) for p in maximal]})
    return maximal[0]


# -- standard form ----------------------------------------------------------

@dataclass(frozen=True)
class Node:
    slots: tuple[int, ...]  # global slots of the scope
    dim: DimVector  # scope dimension vector
    parts: tuple  # ordered partition of dim
    lam: tuple  # cocharacter on the scope slots
    r: Fraction | None  # None for the split of a loopless vertex
    N: Weight  # N^{lam>0} as a global vector
    depth: int
    parent: int | None


@dataclass(frozen=True)
class StandardForm:
    d: DimVector
    chi: Weight
    nodes: tuple[Node, ...]
    psi: Weight
    leaves: tuple[tuple[tuple[int, ...], DimVector], ...]  # (slots, dim) in order

    @property
    def partition(self) -> tuple[DimVector, ...]:
        return tuple(dim for _, dim in self.leaves)

    def reconstruct(self) -> Weight:
        acc = list(self.psi)
        for nd in self.nodes:
            if nd.r is not None:
                for k, x in enumerate(nd.N):
                    acc[k] -= nd.r * x
        return normalize(acc)


def _unit(nv: int, v: int) -> DimVector:
    return tuple(1 if i == v else 0 for i in range(nv))


def standard_form(Q: Quiver, d: DimVector, chi: Sequence) -> StandardForm:
    d = tuple(d)
    chi = normalize(chi)
    return _sf_cached(Q, d, chi)


@lru_cache(maxsize=100_000)
def _sf_cached(Q, d, chi):
    nodes: list[Node] = []
    leaves: list = []
    psi = list(chi)
    n = sum(d)
    all_slots = tuple(range(n))

    def scope_vertices(slots_dim):
        return [v for v, x in enumerate(slots_dim) if x]

    def recurse(slots, dim, vals, depth, parent):
        comps = components(Q, dim)
        if len(comps) > 1:
            # split slots by vertex membership
            off = offsets(dim)
            for comp in comps:
                sub_idx = [off[v] + i for v in comp for i in range(dim[v])]
                sub_idx.sort()
                sub_dim = tuple(dim[v] if v in comp else 0 for v in range(len(dim)))
                recurse(tuple(slots[i] for i in sub_idx), sub_dim,
                        tuple(vals[i] for i in sub_idx), depth, parent)
            return
        m = sum(dim)
        if m > 1 and is_qzero(Q, dim):
            v = scope_vertices(dim)[0]
            parts = tuple(_unit(len(dim), v) for _ in range(m))
            nodes.append(Node(slots, dim, parts, partition_cocharacter(parts), None,
                              (0,) * n, depth, parent))
            me = len(nodes) - 1
            for k in range(m):
                recurse((slots[k],), parts[k], (vals[k],), depth + 1, me)
            return
        r = r_invariant(Q, dim, vals) if m > 1 else Fraction(0)
        if r <= HALF:
            leaves.append((slots, dim))
            for s, x in zip(slots, vals):
                psi[s] = x
            return
        parts = face_cocharacter(Q, dim, vals, r)
        lam = partition_cocharacter(parts)
        Nloc = positive_sum(Q, dim, lam)
        Nglob = [0] * n
        for s, x in zip(slots, Nloc):
            Nglob[s] = x
        nodes.append(Node(slots, dim, parts, lam, r, tuple(Nglob), depth, parent))
        me = len(nodes) - 1
        new = [x + r * y for x, y in zip(vals, Nloc)]
        for part, idx in zip(parts, levi_slots(parts)):
            recurse(tuple(slots[i] for i in idx), part,
                    normalize(new[i] for i in idx), depth + 1, me)

    recurse(all_slots, d, chi, 0, None)
    return StandardForm(d, chi, tuple(nodes), normalize(psi), tuple(leaves))
