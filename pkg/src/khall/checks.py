"""Executable versions of the structural identities, shared by the CLI
`verify` subcommands and the acceptance tests. Each returns a CheckResult."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import factorial

from . import linalg
from .kha import KClass, LeviKClass, delta_vector, multiply, multiply_levi, swap, tensor
from .partitions import dominant_box, enumerate_admissible
from .pbw import (commutator, decompose, filtration_level, generators, in_filtration, p_space,
                  reassemble, verify_bial, window_check, window_generators)
from .polytope import face_cocharacter, r_invariant, rp_invariant
from .quiver import BUILTINS, DimVector, Quiver, components, is_qzero, offsets, rep_weights
from .weights import (act, add, blocks, dot_act, levi_boundary_data, pair,
                      partition_cocharacter, rho, scale, sub, tau)


@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int = 0
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check": self.name, "pass": self.ok, "checked": self.checked, "detail": self.detail}


def builtin(name: str) -> Quiver:
    return BUILTINS[name]()


def dim_vectors(n_vertices: int, max_total: int, min_total: int = 1):
    for d in product(range(max_total + 1), repeat=n_vertices):
        if min_total <= sum(d) <= max_total:
            yield d


def _fmt(x) -> list:
    return [str(v) for v in x]


# 1 ---------------------------------------------------------------------------

def d_factorial(ds=(2, 3, 4), ws=range(-2, 3)) -> CheckResult:
    """[O(w)]^d = d! [Gamma(w, ..., w)] for the Jordan quiver."""
    Q = builtin("jordan")
    n = 0
    for d, w in product(ds, ws):
        x = KClass.basis((1,), (w,))
        acc = x
        for _ in range(d - 1):
            acc = multiply(Q, acc, x)
        expect = KClass.basis((d,), (w,) * d, factorial(d))
        n += 1
        if acc != expect:
            return CheckResult("d-factorial", False, n, {"d": d, "w": w, "got": _terms_json(acc)})
    return CheckResult("d-factorial", True, n)


def _terms_json(x) -> list:
    return [[list(k) if not isinstance(k[0], tuple) else [list(f) for f in k], str(c)]
            for k, c in x.items()]


# 2 ---------------------------------------------------------------------------

def _negative_weights(Q: Quiver, e, f) -> Counter:
    d = tuple(a + b for a, b in zip(e, f))
    if not sum(e) or not sum(f):
        return Counter()
    lam = partition_cocharacter((tuple(e), tuple(f)))
    return Counter(b for b in rep_weights(Q, d) if pair(lam, b) < 0)


def wcomp(quivers=("jordan", "K", "2-loop"), max_entry: int = 3) -> CheckResult:
    """w_ef(rho) - rho = -2 rho_fe and (-w_fe) W_fe = W_ef as multisets."""
    n = 0
    for name in quivers:
        Q = builtin(name)
        for e in product(range(max_entry + 1), repeat=Q.n):
            for f in product(range(max_entry + 1), repeat=Q.n):
                if not sum(e) + sum(f):
                    continue
                d = tuple(a + b for a, b in zip(e, f))
                w_ef, _, _, _ = levi_boundary_data(e, f, Q)
                w_fe, _, rho_fe, _ = levi_boundary_data(f, e, Q)
                r = rho(d)
                n += 1
                if sub(act(w_ef, r), r) != scale(-2, rho_fe):
                    return CheckResult("wcomp", False, n, {"quiver": name, "e": e, "f": f, "part": "a"})
                image = Counter(tuple(-x for x in act(w_fe, b)) for b in _negative_weights(Q, f, e).elements())
                if image != _negative_weights(Q, e, f):
                    return CheckResult("wcomp", False, n, {"quiver": name, "e": e, "f": f, "part": "b"})
    return CheckResult("wcomp", True, n)


# 3 ---------------------------------------------------------------------------

def random_levi_class(rng: random.Random, Q: Quiver, parts, span: int = 3, nterms: int = 3) -> LeviKClass:
    grads, keys = None, []
    choices = []
    for e in parts:
        n = sum(e)
        box = dominant_box(e, 0, [-span] * n, [span] * n) if n else [()]
        choices.append(box)
    shifts = [rng.randint(-span, span) for _ in parts]
    for _ in range(nterms):
        key = []
        for e, box, s in zip(parts, choices, shifts):
            chi = rng.choice(box)
            key.append(tuple(x + s for x in chi))
        keys.append(tuple(key))
    grads = tuple(sum(k) for k in keys[0])
    return LeviKClass(tuple(parts), grads, {k: Fraction(rng.randint(-5, 5) or 1) for k in keys})


def sw_involution(n: int = 200, seed: int = 0, quivers=("jordan", "K", "2-loop", "3-loop", "0-loop")) -> CheckResult:
    rng = random.Random(seed)
    for i in range(n):
        Q = builtin(quivers[i % len(quivers)])
        while True:
            e = tuple(rng.randint(0, 2) for _ in range(Q.n))
            f = tuple(rng.randint(0, 2) for _ in range(Q.n))
            if sum(e) and sum(f):
                break
        y = random_levi_class(rng, Q, (e, f))
        z = swap(Q, swap(Q, y))
        if z != y:
            return CheckResult("sw-involution", False, i + 1,
                               {"quiver": Q.name, "e": e, "f": f, "y": _terms_json(y), "sw2": _terms_json(z)})
    return CheckResult("sw-involution", True, n)


# 4 ---------------------------------------------------------------------------

def _connected_dims(Q: Quiver, max_total: int):
    return [d for d in dim_vectors(Q.n, max_total)
            if len(components(Q, d)) == 1 and not (is_qzero(Q, d) and sum(d) > 1)]


def _random_block_perm(rng, d) -> tuple:
    perm = list(range(sum(d)))
    for b in blocks(d):
        idx = list(b)
        rng.shuffle(idx)
        for k, s in zip(b, idx):
            perm[k] = s
    return tuple(perm)


def rp_invariance(n: int = 500, seed: int = 1, quivers=("jordan", "K", "2-loop", "3-loop", "0-loop"),
                  max_total: int = 3) -> CheckResult:
    """(r, p) is unchanged by tau shifts and by the dot action (with a Weyl-invariant delta)."""
    rng = random.Random(seed)
    pool = [(name, d) for name in quivers for d in _connected_dims(builtin(name), max_total)]
    for i in range(n):
        name, d = pool[i % len(pool)]
        Q = builtin(name)
        chi = tuple(rng.randint(-4, 4) for _ in range(sum(d)))
        delta = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(Q.n))
        dv = delta_vector(d, delta)
        base = add(add(chi, rho(d)), dv)
        ref = rp_invariant(Q, d, base)
        w = _random_block_perm(rng, d)
        moved = add(add(dot_act(w, chi, d), rho(d)), dv)
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        shifted = add(base, scale(c, tau(d)))
        if rp_invariant(Q, d, moved) != ref or rp_invariant(Q, d, shifted) != ref:
            return CheckResult("rp-invariance", False, i + 1,
                               {"quiver": name, "d": d, "chi": chi, "delta": _fmt(delta), "w": w, "c": str(c)})
    return CheckResult("rp-invariance", True, n)


# 5 ---------------------------------------------------------------------------

def descent_cases(max_total: int = 3) -> list:
    """Jordan d <= 3 and every K dimension vector with total <= 3 whose support
    is connected and not a loopless vertex in rank > 1 (where r is undefined)."""
    return ([("jordan", (k,)) for k in range(1, max_total + 1)]
            + [("K", d) for d in _connected_dims(builtin("K"), max_total)])


def rp_descent(cases=None, span: int = 3, deltas=None) -> CheckResult:
    """For r(chi) > 1/2 with face cocharacter lam, every nonempty I among the
    lam-negative weights gives r(chi - sigma_I) <= r and a strictly smaller (r, p)."""
    if cases is None:
        cases = descent_cases()
    n = 0
    for name, d in cases:
        Q = builtin(name)
        for delta in deltas or [(0,) * Q.n, (Fraction(1, 3),) + (Fraction(-1, 5),) * (Q.n - 1)]:
            dv = delta_vector(d, delta)
            k = sum(d)
            for mu in dominant_box(d, 0, [-span] * k, [span] * k):
                chi = add(add(mu, rho(d)), dv)
                r, p = rp_invariant(Q, d, chi)
                if r <= Fraction(1, 2):
                    continue
                lam = partition_cocharacter(face_cocharacter(Q, d, chi, r))
                neg = [b for b in rep_weights(Q, d) if pair(lam, b) < 0]
                for size in range(1, len(neg) + 1):
                    for I in combinations(range(len(neg)), size):
                        sigma = [0] * k
                        for j in I:
                            for s, x in enumerate(neg[j]):
                                sigma[s] += x
                        down = sub(chi, sigma)
                        rp2 = rp_invariant(Q, d, down)
                        n += 1
                        if rp2[0] > r or not rp2 < (r, p):
                            return CheckResult("rp-descent", False, n,
                                               {"quiver": name, "d": d, "chi": _fmt(chi), "I": list(I),
                                                "before": [str(r), p], "after": [str(rp2[0]), rp2[1]]})
    return CheckResult("rp-descent", True, n)


# 6 ---------------------------------------------------------------------------

def window_equiv(quivers=("jordan", "0-loop", "2-loop", "3-loop", "K"), max_total: int = 3,
                 ws=range(-4, 5), deltas=None) -> CheckResult:
    """Polytope enumeration of generators equals the lambda-window enumeration."""
    n = 0
    for name in quivers:
        Q = builtin(name)
        for delta in deltas or [(0,) * Q.n]:
            for d in dim_vectors(Q.n, max_total):
                for w in ws:
                    g = generators(Q, d, w, delta)
                    other = window_generators(Q, d, w, delta)
                    ok, witness = window_check(Q, g)
                    n += 1
                    if tuple(g.weights) != tuple(other) or not ok:
                        return CheckResult("window-equiv", False, n,
                                           {"quiver": name, "d": d, "w": w, "polytope": g.weights,
                                            "window": other, "witness": witness})
    return CheckResult("window-equiv", True, n)


# 7 ---------------------------------------------------------------------------

def random_class(rng: random.Random, d: DimVector, span: int = 3, nterms: int = 3) -> KClass:
    k = sum(d)
    box = dominant_box(d, 0, [-span] * k, [span] * k)
    s = rng.randint(-span, span)
    terms = {}
    for _ in range(nterms):
        chi = tuple(x + s for x in rng.choice(box))
        terms[chi] = Fraction(rng.randint(-4, 4) or 1)
    return KClass(d, sum(next(iter(terms))), terms)


def component_images(Q: Quiver, d, w, delta, window: int):
    """Per S-partition, the classes m_A(g_1 x ... x g_k) over factor generators."""
    out = []
    for A in enumerate_admissible(Q, d, w, delta, "S", window):
        gens = [generators(Q, e, v, dl).weights for (e, v), dl in zip(A.partition.parts, A.delta_A)]
        imgs = [multiply_levi(Q, LeviKClass(A.partition.dims, A.partition.weights, {key: 1}))
                for key in product(*gens)]
        out.append((A, [len(g) for g in gens], imgs))
    return out


def sod(n: int = 200, seed: int = 2, quivers=("jordan", "K", "2-loop"), max_total: int = 3,
        independence=None) -> CheckResult:
    """decompose then reassemble is the identity; component spaces of distinct
    partitions are independent and each has the product rank of its factors."""
    rng = random.Random(seed)
    pool = [(name, d) for name in quivers for d in dim_vectors(builtin(name).n, max_total)]
    for i in range(n):
        name, d = pool[i % len(pool)]
        Q = builtin(name)
        delta = (0,) * Q.n if i % 2 == 0 else tuple(Fraction(rng.randint(-3, 3), 7) for _ in range(Q.n))
        x = random_class(rng, d)
        dec = decompose(Q, x, delta)
        if reassemble(Q, dec) != x:
            return CheckResult("sod", False, i + 1, {"quiver": name, "d": d, "x": _terms_json(x)})
        for P, (A, y) in dec.components.items():
            for key in y.terms:
                for chi, (e, v), dl in zip(key, P.parts, A.delta_A):
                    if chi not in generators(Q, e, v, dl).weights:
                        return CheckResult("sod", False, i + 1,
                                           {"quiver": name, "d": d, "component": P.to_json(),
                                            "outside": list(chi)})
    checked = n
    if independence is None:
        independence = [("jordan", (2,), 0, 2), ("jordan", (2,), 1, 2), ("jordan", (3,), 0, 2),
                        ("K", (1, 1), 0, 2), ("K", (1, 1), 1, 2), ("2-loop", (2,), 0, 2)]
    for name, d, w, window in independence:
        Q = builtin(name)
        comps = component_images(Q, d, w, (0,) * Q.n, window)
        keys = sorted({k for _, _, imgs in comps for x in imgs for k in x.terms})
        rows, total = [], 0
        for A, sizes, imgs in comps:
            own = [[x.terms.get(k, 0) for k in keys] for x in imgs]
            expect = 1
            for s in sizes:
                expect *= s
            if linalg.rank(own, len(keys)) != expect:
                return CheckResult("sod", False, checked,
                                   {"quiver": name, "d": d, "w": w, "kunneth": A.partition.to_json()})
            rows += own
            total += expect
        checked += 1
        if rows and linalg.rank(rows, len(keys)) != total:
            return CheckResult("sod", False, checked, {"quiver": name, "d": d, "w": w, "independence": False})
    return CheckResult("sod", True, checked)


# 8 ---------------------------------------------------------------------------

def bial(cases=None, window: int = 2) -> CheckResult:
    """Delta_B m_A = sum_C (m x m) sw_(23) Delta_AC for all two-part A, B in T."""
    if cases is None:
        cases = [("jordan", (2,)), ("K", (1, 1)), ("K", (2, 0)), ("K", (0, 2))]
    n = 0
    for name, d in cases:
        Q = builtin(name)
        delta = (0,) * Q.n
        for w in range(-2 * window, 2 * window + 1):
            Ts = [A for A in enumerate_admissible(Q, d, w, delta, "T", window)
                  if len(A.partition) == 2 and all(abs(v) <= window for v in A.partition.weights)]
            for A, B in product(Ts, Ts):
                res = verify_bial(Q, A, B, delta, window)
                n += 1
                if not res.ok:
                    return CheckResult("bial", False, n, {"quiver": name, "A": A.partition.to_json(),
                                                          "B": B.partition.to_json(), "witness": res.witness})
    return CheckResult("bial", True, n)


# 9 ---------------------------------------------------------------------------

def qcomm(quivers=("jordan", "K", "2-loop"), window: int = 2) -> CheckResult:
    """For 1-dimensional generators x_e, x_f the commutator x_e x_f - m sw(x_e x x_f)
    lies strictly below the filtration level of x_e x_f."""
    n = 0
    for name in quivers:
        Q = builtin(name)
        delta = (0,) * Q.n
        units = [tuple(int(i == v) for i in range(Q.n)) for v in range(Q.n)]
        for e, f in product(units, units):
            for v, u in product(range(-window, window + 1), repeat=2):
                xe, xf = KClass.basis(e, (v,)), KClass.basis(f, (u,))
                prod = multiply_levi(Q, tensor(xe, xf))
                level = filtration_level(Q, prod, delta)
                c = commutator(Q, xe, xf)
                n += 1
                if not in_filtration(Q, c, delta, level - 1):
                    return CheckResult("qcomm", False, n, {"quiver": name, "e": e, "f": f, "v": v, "u": u,
                                                           "level": level, "commutator": _terms_json(c)})
    return CheckResult("qcomm", True, n)


# 10 --------------------------------------------------------------------------

def rank_identity(cases=None, ws=range(-3, 4), window: int = 3) -> CheckResult:
    """dim(generator span) = dim P + sum of invariant dims over T-orbits."""
    if cases is None:
        cases = [("jordan", (1,)), ("jordan", (2,)), ("0-loop", (1,)), ("0-loop", (2,)), ("0-loop", (3,))]
    n = 0
    rows = []
    for name, d in cases:
        Q = builtin(name)
        for w in ws:
            P = p_space(Q, d, w, (0,) * Q.n, window)
            n += 1
            rows.append([name, list(d), w, len(P.gens), P.dim, sum(P.invariant_dims.values())])
            if not P.identity_holds:
                return CheckResult("rank-identity", False, n, {"quiver": name, "d": d, "w": w,
                                                               "gens": len(P.gens), "P": P.dim,
                                                               "invariants": sum(P.invariant_dims.values())})
    return CheckResult("rank-identity", True, n, {"rows": rows})


ALL = {
    "d-factorial": d_factorial,
    "wcomp": wcomp,
    "sw-involution": sw_involution,
    "rp-invariance": rp_invariance,
    "rp-descent": rp_descent,
    "window-equiv": window_equiv,
    "sod": sod,
    "bial": bial,
    "qcomm": qcomm,
    "rank-identity": rank_identity,
}
