"""Symmetric quivers, dimension vectors and the weights of R(d)."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import yaml

from .errors import InputError, StructuralError

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]  # vertex indices (source, target)
    name: str = ""

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            dup = [v for v, c in Counter(self.vertices).items() if c > 1]
            raise InputError("duplicate vertex ids", {"vertices": dup})
        n = len(self.vertices)
        for s, t in self.edges:
            if not (0 <= s < n and 0 <= t < n):
                raise InputError("edge endpoint out of range", {"edge": [s, t]})
        counts = Counter(self.edges)
        for (s, t), c in sorted(counts.items()):
            if s != t and counts.get((t, s), 0) != c:
                raise InputError(
                    "quiver is not symmetric",
                    {"pair": [self.vertices[s], self.vertices[t]],
                     "forward": c, "backward": counts.get((t, s), 0)},
                    code="symmetry_violation",
                )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def loops(self, i: int) -> int:
        return sum(1 for s, t in self.edges if s == t == i)

    def arrows(self, i: int, j: int) -> int:
        return sum(1 for s, t in self.edges if s == i and t == j)

    def check_dim(self, d) -> DimVector:
        d = tuple(int(x) for x in d)
        if len(d) != self.n:
            raise InputError("dimension vector length does not match vertex count",
                             {"d": list(d), "vertices": list(self.vertices)})
        if any(x < 0 for x in d):
            raise InputError("dimension vector has negative entries", {"d": list(d)})
        return d


def quiver_from_dict(doc: dict, name: str = "") -> Quiver:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InputError("quiver document needs a 'vertices' list", {}, code="parse_error")
    verts = [str(v) for v in doc["vertices"]]
    if len(set(verts)) != len(verts):
        dup = sorted(v for v, c in Counter(verts).items() if c > 1)
        raise InputError("duplicate vertex ids", {"vertices": dup})
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for e in doc.get("edges") or []:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise InputError("edges must be [source, target] pairs", {"edge": e}, code="parse_error")
        s, t = str(e[0]), str(e[1])
        for v in (s, t):
            if v not in index:
                raise InputError("edge references an undeclared vertex",
                                 {"edge": [s, t], "vertex": v}, code="dangling_endpoint")
        edges.append((index[s], index[t]))
    return Quiver(tuple(verts), tuple(edges), name or str(doc.get("name", "")))


def load_quiver(source: str | Path) -> Quiver:
    """Load a quiver from a builtin name or a YAML/JSON file."""
    if isinstance(source, str) and source in BUILTINS:
        return BUILTINS[source]()
    path = Path(source)
    if not path.exists():
        raise InputError("no such quiver file or builtin", {"source": str(source),
                                                             "builtins": sorted(BUILTINS)})
    text = path.read_text()
    try:
        doc = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise InputError(f"cannot parse quiver file: {exc}", {"path": str(path)},
                         code="parse_error") from exc
    return quiver_from_dict(doc, name=path.stem)


def jordan() -> Quiver:
    return Quiver(("1",), ((0, 0),), "jordan")


def gloop(g: int) -> Quiver:
    return Quiver(("1",), ((0, 0),) * g, f"{g}-loop")


def quiver_k() -> Quiver:
    return Quiver(("1", "2"), ((0, 1), (1, 0)), "K")


def q_zero() -> Quiver:
    return Quiver(("1",), (), "Qo")


BUILTINS = {
    "jordan": jordan,
    "K": quiver_k,
    "Qo": q_zero,
    "0-loop": q_zero,
    "1-loop": jordan,
    "2-loop": lambda: gloop(2),
    "3-loop": lambda: gloop(3),
}


def euler_form(Q: Quiver, d, e) -> int:
    d, e = Q.check_dim(d), Q.check_dim(e)
    return sum(a * b for a, b in zip(d, e)) - sum(d[s] * e[t] for s, t in Q.edges)


def offsets(d: DimVector) -> tuple[int, ...]:
    """Start index of each vertex block in the global slot order."""
    out, acc = [], 0
    for x in d:
        out.append(acc)
        acc += x
    return tuple(out)


def slot_vertex(d: DimVector) -> tuple[int, ...]:
    return tuple(v for v, x in enumerate(d) for _ in range(x))


@lru_cache(maxsize=None)
def rep_weights(Q: Quiver, d: DimVector) -> tuple[tuple[int, ...], ...]:
    """Weights of R(d): one per edge s->t and index pair (i, j), namely b^t_j - b^s_i."""
    d = tuple(d)
    off = offsets(d)
    n = sum(d)
    out = []
    for s, t in Q.edges:
        for i in range(d[s]):
            for j in range(d[t]):
                v = [0] * n
                v[off[t] + j] += 1
                v[off[s] + i] -= 1
                out.append(tuple(v))
    return tuple(out)


def support(d: DimVector) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(d) if x > 0)


def components(Q: Quiver, d: DimVector) -> list[tuple[int, ...]]:
    """Connected components (as vertex lists) of the support subquiver."""
    sup = set(support(d))
    adj: dict[int, set[int]] = {v: set() for v in sup}
    for s, t in Q.edges:
        if s in sup and t in sup:
            adj[s].add(t)
            adj[t].add(s)
    seen: set[int] = set()
    comps = []
    for v in sorted(sup):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for x in adj[u]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        comps.append(tuple(sorted(comp)))
    return comps


def is_qzero(Q: Quiver, d: DimVector) -> bool:
    """Support is a single vertex without loops."""
    sup = support(d)
    return len(sup) == 1 and Q.loops(sup[0]) == 0


def restrict_dim(d: DimVector, verts) -> DimVector:
    vs = set(verts)
    return tuple(x if i in vs else 0 for i, x in enumerate(d))


def require_connected(Q: Quiver, d: DimVector) -> None:
    if sum(d) == 0:
        raise StructuralError("zero dimension vector", {"d": list(d)})
    if len(components(Q, d)) > 1:
        raise StructuralError("support of d is disconnected", {"d": list(d)})
