"""Ordered partitions of (d, w), the orders on them, and the admissible sets
S, T, U together with their associated weights."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError, WindowExhausted
from .polytope import (Node, StandardForm, face_cocharacter, positive_sum, r_invariant,
                       standard_form)
from .quiver import DimVector, Quiver, components, is_qzero, offsets, rep_weights, restrict_dim
from .weights import (HALF, Weight, add, blocks, is_dominant, levi_slots, normalize,
                      pair, partition_cocharacter, refines as refines_dims, rho,
                      rho_negative, to_frac)


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[tuple[DimVector, int], ...]

    @staticmethod
    def of(items: Iterable) -> "Partition":
        return Partition(tuple((tuple(int(x) for x in e), int(w)) for e, w in items))

    @property
    def dims(self) -> tuple[DimVector, ...]:
        return tuple(e for e, _ in self.parts)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.parts)

    @property
    def d(self) -> DimVector:
        return tuple(map(sum, zip(*self.dims)))

    @property
    def w(self) -> int:
        return sum(self.weights)

    def __len__(self) -> int:
        return len(self.parts)

    def to_json(self) -> list:
        return [[list(e), w] for e, w in self.parts]


def refines(E: Partition, D: Partition) -> bool:
    """E >= D: consecutive blocks of E sum to the parts of D (dimensions and weights)."""
    if (E.d, E.w) != (D.d, D.w):
        raise InputError("partitions of different (d, w)", {"E": E.to_json(), "D": D.to_json()})
    i = 0
    for e, w in D.parts:
        acc_d, acc_w = tuple(0 for _ in e), 0
        while acc_d != e:
            if i >= len(E.parts):
                return False
            acc_d = tuple(a + b for a, b in zip(acc_d, E.parts[i][0]))
            acc_w += E.parts[i][1]
            i += 1
            if any(a > b for a, b in zip(acc_d, e)):
                return False
        if acc_w != w:
            return False
    return i == len(E.parts)


def cochar_geq(mu: Sequence, lam: Sequence) -> bool:
    """mu >= lam: every difference of simple weights positive on lam is positive on mu."""
    n = len(lam)
    return all(mu[j] > mu[i] for i in range(n) for j in range(n) if lam[j] > lam[i])


# -- admissible data ---------------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    slots: tuple[int, ...]
    parts: tuple[DimVector, ...]
    lam: tuple  # global cocharacter (zero off the scope)
    r: Fraction | None
    N: Weight


@dataclass(frozen=True)
class AdmissibleData:
    partition: Partition
    nodes: tuple[TreeNode, ...]
    chi_A: Weight
    delta_A: tuple[tuple[Fraction, ...], ...]  # per factor, per-vertex values
    witness: Weight  # a dominant chi realizing the partition
    component: tuple[int, ...] = ()  # connected component index of each factor

    @property
    def r_sequence(self) -> tuple[Fraction, ...]:
        return tuple(sorted((n.r for n in self.nodes if n.r is not None), reverse=True))

    def tree_key(self) -> tuple:
        return tuple((n.slots, n.parts, n.lam, n.r) for n in self.nodes)

    def top_rp(self, Q: Quiver) -> tuple[Fraction, int]:
        """(r, p) of the root node, (1/2, 0) for an empty tree."""
        top = [n for n in self.nodes if n.r is not None]
        if not top:
            return HALF, 0
        n0 = top[0]
        p = sum(1 for b in rep_weights(Q, self.partition.d) if pair(n0.lam, b) > 0)
        return n0.r, p

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "tree": [{"parts": [list(p) for p in n.parts], "lambda": list(n.lam),
                      "r": None if n.r is None else str(n.r)} for n in self.nodes],
            "chi_A": [str(x) for x in self.chi_A],
            "delta_A": [[str(x) for x in dl] for dl in self.delta_A],
            "witness": list(self.witness),
        }


def _globalize(lam_scope, slots, n) -> tuple:
    out = [0] * n
    for s, x in zip(slots, lam_scope):
        out[s] = x
    return tuple(out)


def delta_weight(d: DimVector, delta: Sequence) -> Weight:
    return normalize(to_frac(delta[v]) for v, n in enumerate(d) for _ in range(n))


def _assemble(Q: Quiver, d: DimVector, delta, chi: Weight, leaves, nodes: list[TreeNode]) -> AdmissibleData:
    n = sum(d)
    dims = tuple(dim for _, dim in leaves)
    lam_d = partition_cocharacter(dims)
    rneg = rho_negative(d, lam_d)
    acc = [-x - y for x, y in zip(rneg, delta_weight(d, delta))]
    for nd in nodes:
        if nd.r is not None:
            for k, x in enumerate(nd.N):
                acc[k] -= nd.r * x
    chi_A = normalize(acc)
    parts, deltas = [], []
    vert_of_slot = [v for v, m in enumerate(d) for _ in range(m)]
    for slots, dim in leaves:
        parts.append((dim, sum(chi[s] for s in slots)))
        per_vertex: dict[int, Fraction] = {}
        for s in slots:
            v = vert_of_slot[s]
            val = -to_frac(chi_A[s])
            if per_vertex.setdefault(v, val) != val:  # pragma: no cover
                raise AssertionError("associated weight is not Weyl invariant on a factor")
        deltas.append(tuple(per_vertex.get(v, Fraction(0)) for v in range(Q.n)))
    comps = components(Q, d)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    comp_idx = tuple(comp_of[next(v for v, x in enumerate(dim) if x)] for dim in dims)
    return AdmissibleData(Partition(tuple(parts)), tuple(nodes), chi_A, tuple(deltas), chi, comp_idx)


def associated_partition(Q: Quiver, d: DimVector, delta: Sequence, chi: Sequence) -> AdmissibleData:
    """A_chi from the standard form of chi + rho + delta."""
    d = tuple(d)
    chi = tuple(int(x) for x in chi)
    if not is_dominant(chi, d):
        raise PreconditionError("chi must be dominant", {"chi": list(chi)})
    return _assoc_cached(Q, d, tuple(to_frac(x) for x in delta), chi)


@lru_cache(maxsize=100_000)
def _assoc_cached(Q, d, delta, chi):
    shifted = add(add(chi, rho(d)), delta_weight(d, delta))
    sf = standard_form(Q, d, shifted)
    n = sum(d)
    nodes = [TreeNode(nd.slots, nd.parts, _globalize(nd.lam, nd.slots, n), nd.r, nd.N)
             for nd in sf.nodes]
    return _assemble(Q, d, delta, chi, sf.leaves, nodes)


def boundary_partition(Q: Quiver, d: DimVector, delta: Sequence, chi: Sequence) -> AdmissibleData | None:
    """The T-partition of chi when chi + rho + delta lies on (1/2) of the boundary of
    the region (single descent at level 1/2); None when it does not."""
    d = tuple(d)
    chi = tuple(int(x) for x in chi)
    shifted = add(add(chi, rho(d)), delta_weight(d, delta))
    if r_invariant(Q, d, shifted) != HALF:
        return None
    parts = face_cocharacter(Q, d, shifted, HALF)
    lam = partition_cocharacter(parts)
    N = positive_sum(Q, d, lam)
    n = sum(d)
    leaves = tuple(zip(levi_slots(parts), parts))
    node = TreeNode(tuple(range(n)), parts, lam, HALF, N)
    return _assemble(Q, d, delta, chi, leaves, [node])


# -- enumeration -------------------------------------------------------------

def dominant_box(d: DimVector, w: int, lo: Sequence[int], hi: Sequence[int]):
    """Dominant integral weights with coordinate sum w and lo <= chi <= hi."""
    bl = blocks(d)
    n = sum(d)

    def block_vals(b):
        # non-increasing sequences inside [lo, hi] per slot
        def rec(k, prev):
            if k == len(b):
                yield ()
                return
            s = b[k]
            top = hi[s] if prev is None else min(hi[s], prev)
            for x in range(top, lo[s] - 1, -1):
                for tail in rec(k + 1, x):
                    yield (x,) + tail
        yield from rec(0, None)

    per_block = [list(block_vals(b)) for b in bl]
    # combine blocks, pruning on the running sum
    sums = [[sum(v) for v in vals] for vals in per_block]
    out = []

    def rec(i, acc, total):
        if i == len(per_block):
            if total == w:
                out.append(acc)
            return
        rest_min = sum(min(s) if s else 0 for s in sums[i + 1:])
        rest_max = sum(max(s) if s else 0 for s in sums[i + 1:])
        for v, s in zip(per_block[i], sums[i]):
            if rest_min <= w - total - s <= rest_max:
                rec(i + 1, acc + v, total + s)

    rec(0, (), 0)
    return [tuple(x) for x in out if len(x) == n]


def window_box(d: DimVector, w: int, window: int):
    n = sum(d)
    return dominant_box(d, w, [-window] * n, [window] * n)


def enumerate_admissible(Q: Quiver, d: DimVector, w: int, delta: Sequence, kind: str,
                         window: int) -> list[AdmissibleData]:
    """S, T or U within the window |chi entries| <= window, deterministic order."""
    d = tuple(d)
    delta = tuple(to_frac(x) for x in delta)
    kind = kind.upper()
    if kind not in ("S", "T", "U"):
        raise InputError("kind must be S, T or U", {"kind": kind})
    if sum(d) == 0:
        raise InputError("d must be nonzero", {"d": list(d)})
    return list(_enumerate_cached(Q, d, w, delta, kind, window))


@lru_cache(maxsize=10_000)
def _enumerate_cached(Q, d, w, delta, kind, window):
    comps = components(Q, d)
    if kind == "U":
        return tuple(_enumerate_u(Q, d, w, delta, window))
    if len(comps) > 1:
        return tuple(_enumerate_product(Q, d, w, delta, kind, window, comps))
    if is_qzero(Q, d):
        return tuple(_enumerate_qzero(Q, d, w, delta, kind, window))
    found: dict[Partition, AdmissibleData] = {}
    if kind == "S":
        for chi in window_box(d, w, window):
            A = associated_partition(Q, d, delta, chi)
            found.setdefault(A.partition, A)
    else:
        from .pbw import generators
        gens = generators(Q, d, w, delta).weights
        if gens:
            A = associated_partition(Q, d, delta, gens[0])
            found.setdefault(A.partition, A)
        for chi in window_box(d, w, window):
            A = boundary_partition(Q, d, delta, chi)
            if A is not None:
                found.setdefault(A.partition, A)
    return tuple(found[p] for p in sorted(found))


def _enumerate_qzero(Q, d, w, delta, kind, window):
    n = sum(d)
    v = next(i for i, x in enumerate(d) if x)
    if kind == "T" and n > 1:
        return []
    out = []
    for chi in window_box(d, w, window):
        A = associated_partition(Q, d, delta, chi)
        out.append(A)
    return sorted(out, key=lambda a: a.partition)


def _enumerate_product(Q, d, w, delta, kind, window, comps):
    n_comp = len(comps)
    comp_dims = [restrict_dim(d, c) for c in comps]
    found: dict[Partition, AdmissibleData] = {}
    # split w between the components within the window
    caps = [sum(cd) * window for cd in comp_dims]
    for ws in product(*(range(-c, c + 1) for c in caps)):
        if sum(ws) != w:
            continue
        pieces = [enumerate_admissible(Q, cd, wj, delta, kind, window) for cd, wj in zip(comp_dims, ws)]
        for combo in product(*pieces):
            A = _combine(Q, d, delta, combo, comps)
            found.setdefault(A.partition, A)
    return [found[p] for p in sorted(found)]


def _combine(Q, d, delta, combo, comps) -> AdmissibleData:
    """Product of per-component admissible data, flattened in component order."""
    chi = [0] * sum(d)
    off = offsets(d)
    nodes = []
    leaves = []
    for A, comp in zip(combo, comps):
        cd = A.partition.d
        coff = offsets(cd)
        gmap = [off[v] + i for v in range(len(d)) for i in range(cd[v])]
        for k, x in enumerate(A.witness):
            chi[gmap[k]] = x
        for nd in A.nodes:
            lam = [0] * sum(d)
            N = [0] * sum(d)
            for k in range(len(nd.lam)):
                lam[gmap[k]] = nd.lam[k]
                N[gmap[k]] = nd.N[k]
            nodes.append(TreeNode(tuple(gmap[s] for s in nd.slots), nd.parts, tuple(lam), nd.r, tuple(N)))
        for slots, dim in zip(levi_slots(A.partition.dims), A.partition.dims):
            leaves.append((tuple(gmap[s] for s in slots), dim))
    return _assemble(Q, d, delta, tuple(chi), leaves, nodes)


def _enumerate_u(Q, d, w, delta, window):
    found: dict[Partition, AdmissibleData] = {}
    for B in enumerate_admissible(Q, d, w, delta, "S", window):
        pieces = []
        for (dj, wj), dl in zip(B.partition.parts, B.delta_A):
            Ts = enumerate_admissible(Q, dj, wj, dl, "T", window)
            pieces.append(Ts)
        comp = B.component or (0,) * len(B.partition)
        for combo in product(*pieces):
            P = Partition(tuple(p for T in combo for p in T.partition.parts))
            if P in found:
                continue
            # the S tree of B stays; each factor is refined by its T partition
            found[P] = replace(B, partition=P,
                               delta_A=tuple(dl for T in combo for dl in T.delta_A),
                               component=tuple(c for c, T in zip(comp, combo) for _ in T.partition.parts))
    return [found[p] for p in sorted(found)]


def find_admissible(Q: Quiver, A: Partition, delta: Sequence, kind: str = "S",
                    window: int | None = None) -> AdmissibleData:
    """Witness search for A in S or T of its (d, w)."""
    d, w = A.d, A.w
    if window is None:
        m = len(rep_weights(Q, d))
        window = max(abs(x) for x in A.weights) + m + int(max((abs(to_frac(x)) for x in delta), default=0)) + 1
    for data in enumerate_admissible(Q, d, w, delta, kind, window):
        if data.partition == A:
            return data
    raise WindowExhausted("partition not found within window",
                          {"partition": A.to_json(), "kind": kind, "window": window})


# -- the order on S ------------------------------------------------------------

def _in_R_connected(A: AdmissibleData, B: AdmissibleData, qzero: bool) -> bool:
    if A.partition == B.partition:
        return True
    if qzero:
        return False
    ra, rb = A.r_sequence, B.r_sequence
    L = max(len(ra), len(rb))
    for c in range(L):
        a = ra[c] if c < len(ra) else None
        b = rb[c] if c < len(rb) else None
        if a == b:
            continue
        if b is None or (a is not None and a > b):
            return True
        return False
    # equal r sequences: compare cocharacters in the same order
    la = [n.lam for n in sorted((n for n in A.nodes if n.r is not None), key=lambda n: -n.r)]
    lb = [n.lam for n in sorted((n for n in B.nodes if n.r is not None), key=lambda n: -n.r)]
    for x, y in zip(la, lb):
        if x == y:
            continue
        return cochar_geq(x, y) and not cochar_geq(y, x)
    return False


def _split_components(Q: Quiver, A: AdmissibleData):
    d = A.partition.d
    comps = components(Q, d)
    out = []
    for ci, comp in enumerate(comps):
        idx = [i for i, c in enumerate(A.component) if c == ci]
        cslots = set()
        off = offsets(d)
        for v in comp:
            cslots.update(range(off[v], off[v] + d[v]))
        nodes = tuple(n for n in A.nodes if set(n.slots) <= cslots)
        part = Partition(tuple(A.partition.parts[i] for i in idx))
        out.append((part, nodes, is_qzero(Q, restrict_dim(d, comp))))
    return out


def in_R(Q: Quiver, A: AdmissibleData, B: AdmissibleData) -> bool:
    ca, cb = _split_components(Q, A), _split_components(Q, B)
    if len(ca) != len(cb):
        return False
    for (pa, na, qa), (pb, nb, _) in zip(ca, cb):
        a = AdmissibleData(pa, na, (), (), ())
        b = AdmissibleData(pb, nb, (), (), ())
        if not _in_R_connected(a, b, qa):
            return False
    return True


def compadm_precedes(Q: Quiver, A: AdmissibleData, B: AdmissibleData) -> str:
    """Relation between two S-partitions: equal, after ((A, B) in R), before
    ((B, A) in R) or both (neither pair in R: the pieces are mutually orthogonal)."""
    if A.partition == B.partition:
        return "equal"
    ab, ba = in_R(Q, A, B), in_R(Q, B, A)
    if ab and ba:
        raise PreconditionError("order relation holds in both directions",
                                {"A": A.partition.to_json(), "B": B.partition.to_json()})
    if ab:
        return "after"
    if ba:
        return "before"
    return "both"
