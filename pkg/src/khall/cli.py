"""Command line interface. Every command prints one JSON document (or TSV with
--format tsv); errors print {code, message, context} and exit nonzero."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import factorial

from . import checks
from .errors import InputError, KhallError, PreconditionError
from .kha import (KClass, coproduct_component, induct, multiply, restrict, swap, swap_perm)
from .partitions import associated_partition, enumerate_admissible
from .pbw import decompose, filtration_level, generators, p_space, window_check
from .polytope import (face_cocharacter, forced_set, in_scaled_region, r_witness,
                       standard_form)
from .quiver import euler_form, load_quiver, rep_weights
from .serialize import (SCHEMA_VERSION, class_json, dumps, levi_json, parse_class, parse_ints,
                        parse_levi, parse_partition, parse_q, parse_qs, q, sparse_triplets, tsv)
from .weights import nu, partition_cocharacter, rho, tau


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message, {"usage": self.format_usage().strip()}, code="usage")


def _dim(Q, s):
    return Q.check_dim(parse_ints(s, "dimension vector"))


def _delta(Q, s):
    if s is None:
        return (Fraction(0),) * Q.n
    vals = parse_qs(s)
    if len(vals) != Q.n:
        raise InputError("delta needs one rational per vertex", {"delta": s, "vertices": Q.n})
    return vals


def _weight(d, s):
    vals = parse_qs(s)
    if len(vals) != sum(d):
        raise InputError("weight length does not match d", {"d": list(d), "chi": s})
    return vals


def _int_weight(d, s):
    vals = _weight(d, s)
    if any(v.denominator != 1 for v in vals):
        raise InputError("weight must be integral", {"chi": s})
    return tuple(int(v) for v in vals)


def _check_class(Q, x: KClass):
    Q.check_dim(x.d)
    return x


# -- commands ------------------------------------------------------------------

def cmd_euler(Q, a):
    d, e = _dim(Q, a.d), _dim(Q, a.e)
    return {"d": list(d), "e": list(e), "euler": euler_form(Q, d, e)}, None


def cmd_weights(Q, a):
    d = _dim(Q, a.d)
    if sum(d) == 0:
        raise InputError("d must be nonzero", {"d": list(d)})
    if a.which == "rho":
        vec = rho(d)
    elif a.which == "tau":
        vec = tau(d)
    elif a.which == "nu":
        vec = nu(d)
    else:
        vec = None
    if vec is not None:
        return {"d": list(d), a.which: [q(x) for x in vec]}, (["slot", a.which], [[i, q(x)] for i, x in enumerate(vec)])
    W = rep_weights(Q, d)
    return {"d": list(d), "weights": [list(b) for b in W]}, (["index", "weight"], [[i, list(b)] for i, b in enumerate(W)])


def cmd_rinv(Q, a):
    d = _dim(Q, a.d)
    chi = _weight(d, a.chi)
    wit = r_witness(Q, d, chi)
    return {"d": list(d), "chi": [q(x) for x in chi], "r": q(wit.r),
            "witness": {"coeffs": [q(c) for c in wit.coeffs], "tau": q(wit.tau_coeff)}}, None


def cmd_pinv(Q, a):
    d = _dim(Q, a.d)
    chi = _weight(d, a.chi)
    r = r_witness(Q, d, chi).r
    if r == 0:
        raise PreconditionError("p is defined for r > 0", {"chi": [q(x) for x in chi]})
    J = forced_set(Q, d, chi, None, a.method)
    return {"d": list(d), "chi": [q(x) for x in chi], "r": q(r), "p": len(J),
            "saturated": sorted(J)}, None


def cmd_member(Q, a):
    d = _dim(Q, a.d)
    chi = _weight(d, a.chi)
    m = in_scaled_region(Q, d, chi, parse_q(a.r))
    return {"d": list(d), "chi": [q(x) for x in chi], "r": a.r, "member": m.feasible,
            "coeffs": [q(c) for c in m.coeffs], "farkas": [q(c) for c in m.farkas]}, None


def cmd_face(Q, a):
    d = _dim(Q, a.d)
    chi = _weight(d, a.chi)
    parts = face_cocharacter(Q, d, chi)
    return {"d": list(d), "chi": [q(x) for x in chi], "partition": [list(e) for e in parts],
            "lambda": list(partition_cocharacter(parts))}, None


def cmd_stdform(Q, a):
    d = _dim(Q, a.d)
    chi = _weight(d, a.chi)
    sf = standard_form(Q, d, chi)
    nodes = [{"slots": list(n.slots), "dim": list(n.dim), "parts": [list(e) for e in n.parts],
              "lambda": list(n.lam), "r": None if n.r is None else q(n.r), "N": list(n.N),
              "depth": n.depth, "parent": n.parent} for n in sf.nodes]
    return {"d": list(d), "chi": [q(x) for x in chi], "nodes": nodes,
            "psi": [q(x) for x in sf.psi], "partition": [list(e) for e in sf.partition]}, None


def cmd_admissible(Q, a):
    d = _dim(Q, a.d)
    delta = _delta(Q, a.delta)
    data = enumerate_admissible(Q, d, a.w, delta, a.kind, a.window)
    out = [A.to_json() for A in data]
    rows = [[A.partition.to_json(), [str(n.r) for n in A.nodes if n.r is not None]] for A in data]
    return {"d": list(d), "w": a.w, "kind": a.kind.upper(), "window": a.window, "partitions": out}, \
        (["partition", "r_sequence"], rows)


def cmd_assoc(Q, a):
    d = _dim(Q, a.d)
    A = associated_partition(Q, d, _delta(Q, a.delta), _int_weight(d, a.chi))
    return A.to_json(), None


def cmd_generators(Q, a):
    d = _dim(Q, a.d)
    g = generators(Q, d, a.w, _delta(Q, a.delta))
    ok, witness = window_check(Q, g)
    return {"d": list(d), "w": a.w, "delta": [q(x) for x in g.delta],
            "generators": [list(c) for c in g.weights], "window_check": ok,
            "witness": None if witness is None else [list(witness[0]), list(witness[1] or [])]}, \
        (["weight"], [[list(c)] for c in g.weights])


def _class_rows(x: KClass):
    return ["weight", "coeff"], [[list(k), q(c)] for k, c in x.items()]


def cmd_multiply(Q, a):
    x, y = _check_class(Q, parse_class(a.x)), _check_class(Q, parse_class(a.y))
    z = multiply(Q, x, y)
    return class_json(z), _class_rows(z)


def cmd_induct(Q, a):
    parts = tuple(Q.check_dim(parse_ints(e, "part")) for e in a.parts.split(";"))
    d = tuple(map(sum, zip(*parts)))
    z = induct(Q, parts, _int_weight(d, a.chi))
    return class_json(z), _class_rows(z)


def cmd_restrict(Q, a):
    d, e, f = _dim(Q, a.d), _dim(Q, a.e), _dim(Q, a.f)
    if tuple(x + y for x, y in zip(e, f)) != d:
        raise InputError("e + f must equal d", {"d": list(d), "e": list(e), "f": list(f)})
    res = restrict(d, _int_weight(d, a.chi), e, f)
    rows = [[list(mu), list(nu_), str(m)] for (mu, nu_), m in sorted(res.items())]
    return {"d": list(d), "e": list(e), "f": list(f),
            "terms": [[[list(mu), list(nu_)], str(m)] for (mu, nu_), m in sorted(res.items())]}, \
        (["mu", "nu", "mult"], rows)


def _levi_rows(y):
    return ["factors", "coeff"], [[[list(f) for f in k], q(c)] for k, c in y.items()]


def cmd_coproduct(Q, a):
    x = _check_class(Q, parse_class(a.x))
    A = parse_partition(a.A)
    if len(A) != 2 or A.d != x.d or A.w != x.w:
        raise InputError("A must be a two-part partition of the grading of x",
                         {"A": A.to_json(), "d": list(x.d), "w": x.w})
    y = coproduct_component(Q, x, A.parts, _delta(Q, a.delta))
    return levi_json(y), _levi_rows(y)


def cmd_swap(Q, a):
    y = parse_levi(a.y)
    for e in y.parts:
        Q.check_dim(e)
    if a.order:
        z = swap_perm(Q, y, parse_ints(a.order, "order"))
    else:
        z = swap(Q, y)
    return levi_json(z), _levi_rows(z)


def cmd_decompose(Q, a):
    x = _check_class(Q, parse_class(a.x))
    dec = decompose(Q, x, _delta(Q, a.delta), a.window)
    comps = [{"partition": P.to_json(), "admissible": A.to_json(), "component": levi_json(y)}
             for P, A, y in dec.ordered()]
    rows = [[P.to_json(), [[list(f) for f in k], q(c)]] for P, _, y in dec.ordered() for k, c in y.items()]
    return {"input": class_json(x), "components": comps}, (["partition", "term"], rows)


def cmd_filtration(Q, a):
    x = _check_class(Q, parse_class(a.x))
    level = filtration_level(Q, x, _delta(Q, a.delta), a.window)
    return {"input": class_json(x), "level": level}, None


def cmd_pspace(Q, a):
    d = _dim(Q, a.d)
    P = p_space(Q, d, a.w, _delta(Q, a.delta), a.window)
    return {"d": list(d), "w": a.w, "delta": [q(x) for x in P.delta], "window": a.window,
            "generators": [list(g) for g in P.gens], "dim": P.dim,
            "basis": sparse_triplets(P.basis),
            "invariant_dims": [[A.to_json(), k] for A, k in sorted(P.invariant_dims.items())],
            "rank_identity": P.identity_holds,
            "projection": None if P.projection is None else sparse_triplets(P.projection)}, \
        (["d", "w", "generators", "dim_P", "invariants", "rank_identity"],
         [[list(d), a.w, len(P.gens), P.dim, sum(P.invariant_dims.values()), P.identity_holds]])


def cmd_verify(Q, a):
    name = a.name
    if name == "d-factorial" and a.d is not None:
        n = parse_ints(a.d)
        if len(n) != 1 or n[0] < 1:
            raise InputError("d-factorial takes a single positive dimension", {"d": a.d})
        n = n[0]
        w = 0 if a.w is None else a.w
        res = checks.d_factorial(ds=(n,), ws=(w,))
        expect = KClass.basis((n,), (w,) * n, factorial(n))
        res.detail["class"] = class_json(expect)
    else:
        kwargs = {}
        if a.seed is not None and name in ("sw-involution", "rp-invariance", "sod"):
            kwargs["seed"] = a.seed
        res = checks.ALL[name](**kwargs)
    return res.to_dict(), (["check", "pass", "checked"], [[res.name, res.ok, res.checked]])


COMMANDS = {
    "euler": cmd_euler, "weights": cmd_weights, "rinv": cmd_rinv, "pinv": cmd_pinv,
    "member": cmd_member, "face": cmd_face, "stdform": cmd_stdform, "admissible": cmd_admissible,
    "assoc": cmd_assoc, "generators": cmd_generators, "multiply": cmd_multiply,
    "induct": cmd_induct, "restrict": cmd_restrict, "coproduct": cmd_coproduct, "swap": cmd_swap,
    "decompose": cmd_decompose, "filtration": cmd_filtration, "pspace": cmd_pspace,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="khall", description="Exact K-theoretic Hall algebra computations.")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_, *, d=True, chi=False, w=False, delta=False, window=None):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--format", choices=["json", "tsv"], default=argparse.SUPPRESS)
        s.add_argument("--quiver", default="jordan", help="builtin name or YAML/JSON file")
        if d:
            s.add_argument("--d", required=True, help="dimension vector, e.g. 1,2")
        if chi:
            s.add_argument("--chi", required=True, help="weight, rationals allowed: 1/2,-1/2")
        if w:
            s.add_argument("--w", type=int, required=True)
        if delta:
            s.add_argument("--delta", help="one rational per vertex (default 0)")
        if window is not None:
            s.add_argument("--window", type=int, default=window)
        return s

    cmd("euler", "Euler form chi(d, e)").add_argument("--e", required=True)
    s = cmd("weights", "structure weights or the weights of R(d)")
    s.add_argument("which", choices=["rho", "tau", "nu", "rep"])
    cmd("rinv", "r-invariant with witness", chi=True)
    cmd("pinv", "p-invariant", chi=True).add_argument("--method", choices=["dual", "enumerate"],
                                                      default="enumerate")
    cmd("member", "membership in r times the region", chi=True).add_argument("--r", required=True)
    cmd("face", "face cocharacter at the r-invariant", chi=True)
    cmd("stdform", "standard form", chi=True)
    s = cmd("admissible", "admissible partitions in a window", w=True, delta=True, window=3)
    s.add_argument("kind", choices=["S", "T", "U", "s", "t", "u"])
    cmd("assoc", "partition associated with a dominant weight", chi=True, delta=True)
    cmd("generators", "generator weights", w=True, delta=True)
    s = cmd("multiply", "Hall product", d=False)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s = cmd("induct", "Hall induction from a Levi", d=False, chi=True)
    s.add_argument("--parts", required=True, help="parts separated by ';', e.g. 1;1")
    s = cmd("restrict", "restriction to the Levi of (e, f)", chi=True)
    s.add_argument("--e", required=True)
    s.add_argument("--f", required=True)
    s = cmd("coproduct", "coproduct component", d=False, delta=True)
    s.add_argument("--x", required=True)
    s.add_argument("--A", required=True, help="two-part partition, e.g. 1:0;1:0")
    s = cmd("swap", "swap map on a Levi class", d=False)
    s.add_argument("--y", required=True)
    s.add_argument("--order", help="factor order for a permutation swap, e.g. 2,0,1")
    s = cmd("decompose", "semi-orthogonal decomposition of a class", d=False, delta=True)
    s.add_argument("--x", required=True)
    s.add_argument("--window", type=int, default=None)
    s = cmd("filtration", "filtration level of a class", d=False, delta=True)
    s.add_argument("--x", required=True)
    s.add_argument("--window", type=int, default=None)
    cmd("pspace", "PBW generator space", w=True, delta=True, window=3)
    s = sub.add_parser("verify", help="run a structural check")
    s.add_argument("--format", choices=["json", "tsv"], default=argparse.SUPPRESS)
    s.add_argument("name", choices=sorted(checks.ALL))
    s.add_argument("--quiver", default="jordan")
    s.add_argument("--d")
    s.add_argument("--w", type=int)
    s.add_argument("--seed", type=int)
    return p


def _render(result, rows, fmt: str) -> str:
    if fmt == "tsv":
        if rows is None:
            flat = sorted(result.items()) if isinstance(result, dict) else [("result", result)]
            return tsv(["key", "value"], [[k, dumps(v) if isinstance(v, (dict, list)) else v] for k, v in flat])
        return tsv(*rows)
    return dumps({"schema_version": SCHEMA_VERSION, "result": result})


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        Q = load_quiver(args.quiver)
        result, rows = COMMANDS[args.command](Q, args)
    except KhallError as exc:
        print(dumps({"schema_version": SCHEMA_VERSION, "error": exc.to_dict()}))
        return 2
    except RecursionError as exc:  # pragma: no cover
        print(dumps({"schema_version": SCHEMA_VERSION,
                     "error": {"code": "internal", "message": str(exc), "context": {}}}))
        return 3
    print(_render(result, rows, fmt))
    if args.command == "verify" and not result["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
