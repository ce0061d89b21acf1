"""Local irregularity, decomposition certificates, and the exceptional graphs."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import GraphError, ParseError
from .graph import Edge, Graph, edge, is_connected


def is_locally_irregular(g: Graph) -> bool:
    return all(g.degree(u) != g.degree(v) for u, v in g.edges)


def edges_locally_irregular(edges: Iterable[Edge]) -> bool:
    deg: dict[int, int] = {}
    es = list(edges)
    for u, v in es:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return all(deg[u] != deg[v] for u, v in es)


@dataclass(frozen=True)
class Decomposition:
    """An edge colouring; ``color`` maps every edge of ``graph`` to a class index >= 1."""

    graph: Graph
    color: Mapping[Edge, int]

    @property
    def k(self) -> int:
        """Number of nonempty classes."""
        return len(set(self.color.values()))

    def classes(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {}
        for e in sorted(self.color):
            out.setdefault(self.color[e], []).append(e)
        return dict(sorted(out.items()))

    def class_graph(self, c: int) -> Graph:
        return Graph(e for e, col in self.color.items() if col == c)

    def normalized(self) -> Decomposition:
        """Relabel classes to 1..k in increasing order of their old labels."""
        relabel = {c: i for i, c in enumerate(sorted(set(self.color.values())), start=1)}
        return Decomposition(self.graph, {e: relabel[c] for e, c in self.color.items()})

    def to_text(self) -> str:
        return "".join(f"{u} {v} {self.color[(u, v)]}\n" for u, v in sorted(self.color))


def parse_decomposition(g: Graph, text: str) -> Decomposition:
    color: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 3 or not all(t.isascii() and t.isdigit() for t in toks):
            raise ParseError(f"expected 'u v c', got {line!r}", lineno)
        u, v, c = map(int, toks)
        if c < 1:
            raise ParseError("class indices start at 1", lineno)
        e = edge(u, v)
        if e in color:
            raise ParseError(f"edge {u} {v} coloured twice", lineno)
        color[e] = c
    return Decomposition(g, color)


@dataclass(frozen=True)
class Violation:
    cls: int
    edge: Edge
    deg_u: int
    deg_v: int


@dataclass(frozen=True)
class Certificate:
    valid: bool
    class_count: int
    violations: tuple[Violation, ...] = ()
    max_classes: int | None = None

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "classCount": self.class_count,
            "maxClasses": self.max_classes,
            "violations": [
                {"class": v.cls, "edge": list(v.edge), "degU": v.deg_u, "degV": v.deg_v}
                for v in self.violations
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def verify(d: Decomposition, max_classes: int | None = None) -> Certificate:
    """Check every class for equal-degree adjacencies.

    Raises GraphError when the colouring is not a total colouring of the graph;
    a coloured but irregular decomposition yields ``valid=False`` instead.
    """
    g = d.graph
    extra = set(d.color) - g.edges
    if extra:
        raise GraphError(f"coloured edges not in graph: {sorted(extra)[:5]}")
    missing = g.edges - set(d.color)
    if missing:
        raise GraphError(f"uncoloured edges: {sorted(missing)[:5]}")
    bad = [c for c in d.color.values() if not isinstance(c, int) or c < 1]
    if bad:
        raise GraphError(f"class indices must be integers >= 1, got {bad[0]!r}")
    deg: dict[tuple[int, int], int] = {}
    for (u, v), c in d.color.items():
        deg[(u, c)] = deg.get((u, c), 0) + 1
        deg[(v, c)] = deg.get((v, c), 0) + 1
    violations = []
    for (u, v), c in sorted(d.color.items(), key=lambda item: (item[1], item[0])):
        du, dv = deg[(u, c)], deg[(v, c)]
        if du == dv:
            violations.append(Violation(c, (u, v), du, dv))
    count = d.k
    valid = not violations and (max_classes is None or count <= max_classes)
    return Certificate(valid, count, tuple(violations), max_classes)


class Reason(str, enum.Enum):
    ODD_PATH = "odd path"
    ODD_CYCLE = "odd cycle"
    FAMILY_T = "family T"
    NO = "no"


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.sorted_edges():
        for w in sorted(g.neighbors(u) & g.neighbors(v)):
            if w > v:
                out.append((u, v, w))
    return out


def _in_family_t(g: Graph) -> bool:
    tris = triangles(g)
    if not tris or g.max_degree() > 3:
        return False
    tri_vertices: set[int] = set()
    tri_edges: set[Edge] = set()
    for t in tris:
        if tri_vertices & set(t):
            return False
        tri_vertices |= set(t)
        tri_edges |= {edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])}
    # the vertex-disjoint triangles are independent cycles, so they span the
    # cycle space exactly when the cycle rank equals their number
    if g.size - g.order + 1 != len(tris):
        return False
    if any(g.degree(v) > 2 for v in g.vertices - tri_vertices):
        return False
    # maximal threads of non-triangle edges, cut at vertices that are not
    # plain degree-2 path vertices
    rest = [e for e in g.edges if e not in tri_edges]
    adj: dict[int, list[int]] = {}
    for u, v in rest:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    def is_end(x: int) -> bool:
        return x in tri_vertices or g.degree(x) != 2

    seen: set[Edge] = set()
    for start in sorted(adj):
        if not is_end(start):
            continue
        for nxt in sorted(adj[start]):
            if edge(start, nxt) in seen:
                continue
            prev, cur, length = start, nxt, 1
            seen.add(edge(prev, cur))
            while not is_end(cur):
                step = next(y for y in adj[cur] if y != prev)
                prev, cur = cur, step
                seen.add(edge(prev, cur))
                length += 1
            both_in_triangles = start in tri_vertices and cur in tri_vertices
            if (length % 2 == 1) != both_in_triangles:
                return False
    return True


def classify_exceptional(g: Graph) -> Reason:
    """Which exceptional family a connected graph belongs to, or ``Reason.NO``."""
    if not is_connected(g):
        raise GraphError("is_exceptional expects a connected graph")
    if g.size % 2 == 0:
        return Reason.NO
    if g.max_degree() <= 2:
        if g.size == g.order - 1:
            return Reason.ODD_PATH
        return Reason.ODD_CYCLE
    if _in_family_t(g):
        return Reason.FAMILY_T
    return Reason.NO


def is_exceptional(g: Graph) -> bool:
    return classify_exceptional(g) is not Reason.NO


def certify(g: Graph, color: Mapping[Edge, int], bound: int | None = None) -> Decomposition:
    """Wrap ``color`` as a Decomposition and assert it verifies."""
    d = Decomposition(g, dict(color))
    cert = verify(d, bound)
    if not cert.valid:
        raise AssertionError(f"internal error: decomposition failed verification: {cert.to_dict()}")
    return d
