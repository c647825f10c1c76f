"""Exact JSON/TSV encodings and the compact literal syntax used by the CLI.

Rationals are strings "p/q" (or "p" when integral). Class literals:
  KClass      "D/CHI[:COEF];CHI[:COEF]..."   e.g. "2/1,-1:3;0,0:-1/2"
  LeviKClass  "E;F/A|B[:COEF];..."           e.g. "1;1/1|0:2"
Dimension vectors and weights are comma separated; JSON objects are also accepted."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .errors import InputError
from .kha import KClass, LeviKClass
from .partitions import Partition

SCHEMA_VERSION = 1


def q(x) -> str:
    return str(Fraction(x))


def parse_q(s: str) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {s!r}", {"value": str(s)}) from exc


def parse_ints(s: str, what: str = "vector") -> tuple[int, ...]:
    s = s.strip()
    if not s:
        return ()
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError as exc:
        raise InputError(f"{what} must be comma separated integers", {"value": s}) from exc


def parse_qs(s: str) -> tuple[Fraction, ...]:
    s = s.strip()
    return tuple(parse_q(x) for x in s.split(",")) if s else ()


def weight_json(chi: Sequence) -> list:
    return [q(x) if isinstance(x, Fraction) and x.denominator != 1 else int(x) for x in chi]


def class_json(x: KClass) -> dict:
    return {"d": list(x.d), "w": x.w, "terms": [[list(k), q(c)] for k, c in x.items()]}


def levi_json(y: LeviKClass) -> dict:
    return {"parts": [list(e) for e in y.parts], "grads": list(y.grads),
            "terms": [[[list(f) for f in k], q(c)] for k, c in y.items()]}


def _split_coef(term: str):
    if ":" in term:
        body, coef = term.split(":", 1)
        return body, parse_q(coef)
    return term, Fraction(1)


def parse_class(s: str) -> KClass:
    s = s.strip()
    if s.startswith("{"):
        try:
            doc = json.loads(s)
            d = tuple(int(v) for v in doc["d"])
            terms = {tuple(int(v) for v in k): parse_q(c) for k, c in doc["terms"]}
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputError("malformed class JSON", {"value": s}) from exc
    else:
        if "/" not in s:
            raise InputError("class literal must look like D/CHI[:COEF];...", {"value": s})
        head, body = s.split("/", 1)
        d = parse_ints(head, "dimension vector")
        terms = {}
        for t in filter(None, body.split(";")):
            chi, c = _split_coef(t)
            chi = parse_ints(chi, "weight")
            terms[chi] = terms.get(chi, 0) + c
    if not terms:
        raise InputError("class literal has no terms", {"value": s})
    ws = {sum(k) for k in terms}
    if len(ws) != 1:
        raise InputError("class terms have different total weights", {"value": s})
    x = KClass(d, ws.pop(), terms)
    for chi in x.terms:
        if len(chi) != sum(d):
            raise InputError("weight length does not match d", {"d": list(d), "chi": list(chi)})
    x.validate()
    return x


def parse_levi(s: str) -> LeviKClass:
    s = s.strip()
    if s.startswith("{"):
        try:
            doc = json.loads(s)
            parts = tuple(tuple(int(v) for v in e) for e in doc["parts"])
            terms = {tuple(tuple(int(v) for v in f) for f in k): parse_q(c) for k, c in doc["terms"]}
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputError("malformed Levi class JSON", {"value": s}) from exc
    else:
        if "/" not in s:
            raise InputError("Levi literal must look like E;F/A|B[:COEF];...", {"value": s})
        head, body = s.split("/", 1)
        parts = tuple(parse_ints(e, "dimension vector") for e in head.split(";"))
        terms = {}
        for t in filter(None, body.split(";")):
            key, c = _split_coef(t)
            key = tuple(parse_ints(f, "weight") for f in key.split("|"))
            terms[key] = terms.get(key, 0) + c
    if not terms:
        raise InputError("Levi literal has no terms", {"value": s})
    grads = {tuple(sum(f) for f in k) for k in terms}
    if len(grads) != 1:
        raise InputError("Levi terms have different factor gradings", {"value": s})
    for k in terms:
        if len(k) != len(parts) or any(len(f) != sum(e) for f, e in zip(k, parts)):
            raise InputError("factor weights do not match the parts", {"value": s})
        for f, e in zip(k, parts):
            off = 0
            for n in e:
                block = f[off:off + n]
                if any(a < b for a, b in zip(block, block[1:])):
                    raise InputError("factor weight is not dominant", {"weight": list(f)})
                off += n
    return LeviKClass(parts, grads.pop(), terms)


def parse_partition(s: str) -> Partition:
    """"E:V;F:U" -> ((E, V), (F, U))."""
    items = []
    for piece in filter(None, s.split(";")):
        if ":" not in piece:
            raise InputError("partition parts look like E:V separated by ';'", {"value": s})
        e, v = piece.split(":", 1)
        try:
            items.append((parse_ints(e, "dimension vector"), int(v)))
        except ValueError as exc:
            raise InputError("partition weight must be an integer", {"value": s}) from exc
    return Partition.of(items)


def sparse_triplets(rows: Sequence[Sequence]) -> list:
    return [[i, j, q(v)] for i, row in enumerate(rows) for j, v in enumerate(row) if v]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def tsv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    def cell(v):
        if isinstance(v, (list, tuple)):
            if any(isinstance(x, (list, tuple)) for x in v):
                return json.dumps(v, separators=(",", ":"), default=str)
            return ",".join(cell(x) for x in v)
        if isinstance(v, Fraction):
            return q(v)
        return str(v)
    lines = ["\t".join(header)] + ["\t".join(cell(v) for v in r) for r in rows]
    return "\n".join(lines)
