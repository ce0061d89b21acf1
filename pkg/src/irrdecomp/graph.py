"""Simple undirected graphs and the structural primitives used by the decomposers.

Vertices are nonnegative integers and are never relabelled.  An edge is stored
as the sorted pair ``(u, v)`` with ``u < v``.  "Size" always means the number of
edges, "order" the number of vertices.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import GraphError, ParseError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph.

    >>> g = Graph([(0, 1), (1, 2)], vertices=[5])
    >>> g.order, g.size, g.degree(1)
    (4, 2, 2)
    """

    __slots__ = ("_adj", "_edges", "_hash")

    def __init__(self, edges: Iterable[tuple[int, int]] = (), vertices: Iterable[int] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            _check_vertex(v)
            adj.setdefault(v, set())
        es = set()
        for u, v in edges:
            _check_vertex(u)
            _check_vertex(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            e = edge(u, v)
            if e in es:
                raise GraphError(f"duplicate edge {e}")
            es.add(e)
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._edges = frozenset(es)
        self._hash = None

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def order(self) -> int:
        return len(self._adj)

    @property
    def size(self) -> int:
        return len(self._edges)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._adj)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def incident_edges(self, v: int) -> list[Edge]:
        return [edge(v, w) for w in sorted(self._adj[v])]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def degrees(self) -> dict[int, int]:
        return {v: len(nb) for v, nb in self._adj.items()}

    def min_degree(self) -> int:
        return min((len(nb) for nb in self._adj.values()), default=0)

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._adj))

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._edges == other._edges and self._adj.keys() == other._adj.keys()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._edges, frozenset(self._adj)))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"

    # -- derived graphs ------------------------------------------------

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Spanning subgraph without ``edges``; every vertex is kept."""
        drop = {edge(*e) for e in edges}
        missing = drop - self._edges
        if missing:
            raise GraphError(f"edges not in graph: {sorted(missing)}")
        return Graph(self._edges - drop, self._adj)

    def edge_subgraph(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Subgraph formed by ``edges`` and their endpoints only."""
        keep = {edge(*e) for e in edges}
        missing = keep - self._edges
        if missing:
            raise GraphError(f"edges not in graph: {sorted(missing)}")
        return Graph(keep)

    def induced(self, vertices: Iterable[int]) -> Graph:
        vs = set(vertices)
        return Graph((e for e in self._edges if e[0] in vs and e[1] in vs), vs)

    def remove_vertex(self, v: int) -> Graph:
        return self.induced(self.vertices - {v})

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph(list(self._edges) + [edge(*e) for e in edges], self._adj)

    def without_isolated(self) -> Graph:
        return Graph(self._edges)


def _check_vertex(v: object) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise GraphError(f"vertex ids must be nonnegative integers, got {v!r}")


# -- text format ---------------------------------------------------------


def _parse_int(tok: str, lineno: int) -> int:
    if not (tok.isascii() and tok.isdigit()):
        raise ParseError(f"malformed token {tok!r}", lineno)
    return int(tok)


def parse_edge_list(text: str) -> Graph:
    """Read lines ``u v`` (edges) and ``v`` (isolated vertices); ``#`` starts a comment line."""
    vertices: list[int] = []
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) == 1:
            vertices.append(_parse_int(toks[0], lineno))
        elif len(toks) == 2:
            u, v = (_parse_int(t, lineno) for t in toks)
            if u == v:
                raise ParseError(f"loop edge {u} {v}", lineno)
            e = edge(u, v)
            if e in seen:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            seen.add(e)
            edges.append(e)
        else:
            raise ParseError(f"expected 1 or 2 tokens, got {len(toks)}", lineno)
    return Graph(edges, vertices)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.sorted_edges()]
    lines += [str(v) for v in g.sorted_vertices() if g.degree(v) == 0]
    return "".join(line + "\n" for line in lines)


def split_graph_stream(text: str) -> list[Graph]:
    """Split a multi-graph stream whose blocks start with ``# graph`` header lines."""
    blocks: list[list[str]] = []
    for line in text.splitlines():
        if line.startswith("# graph"):
            blocks.append([])
        elif blocks:
            blocks[-1].append(line)
    return [parse_edge_list("\n".join(b)) for b in blocks]


# -- components and bipartition -----------------------------------------


class Component(NamedTuple):
    vertices: frozenset[int]
    size: int

    @property
    def parity(self) -> str:
        return "even" if self.size % 2 == 0 else "odd"


def _bfs_component(g: Graph, start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def components(g: Graph) -> list[Component]:
    """Connected components ordered by smallest vertex; isolated vertices included."""
    out = []
    seen: set[int] = set()
    for v in g.sorted_vertices():
        if v in seen:
            continue
        comp = _bfs_component(g, v)
        seen |= comp
        size = sum(g.degree(x) for x in comp) // 2
        out.append(Component(frozenset(comp), size))
    return out


def component_graphs(g: Graph, *, skip_isolated: bool = True) -> list[Graph]:
    return [
        g.induced(c.vertices)
        for c in components(g)
        if not (skip_isolated and c.size == 0)
    ]


def is_connected(g: Graph) -> bool:
    return g.order <= 1 or len(_bfs_component(g, min(g.vertices))) == g.order


def all_components_even(g: Graph) -> bool:
    return all(c.size % 2 == 0 for c in components(g))


@dataclass(frozen=True)
class Bipartition:
    class_a: frozenset[int]
    class_b: frozenset[int]

    def side(self, v: int) -> str:
        if v in self.class_a:
            return "A"
        if v in self.class_b:
            return "B"
        raise KeyError(v)

    def swapped(self) -> Bipartition:
        return Bipartition(self.class_b, self.class_a)

    def restrict(self, vertices: Iterable[int]) -> Bipartition:
        vs = frozenset(vertices)
        return Bipartition(self.class_a & vs, self.class_b & vs)

    def is_valid_for(self, g: Graph) -> bool:
        if self.class_a & self.class_b or (self.class_a | self.class_b) != g.vertices:
            return False
        return all((u in self.class_a) != (v in self.class_a) for u, v in g.edges)


@dataclass(frozen=True)
class OddCycle:
    """Witness that a graph is not bipartite (vertex sequence of the cycle)."""

    cycle: tuple[int, ...]


def bipartition(g: Graph) -> Bipartition | OddCycle:
    """Two-colour every component, putting its smallest vertex in class A."""
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for root in g.sorted_vertices():
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.sorted_neighbors(x):
                if y not in color:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    queue.append(y)
                elif color[y] == color[x]:
                    return OddCycle(_tree_cycle(parent, x, y))
    a = frozenset(v for v, c in color.items() if c == 0)
    return Bipartition(a, g.vertices - a)


def _tree_cycle(parent: dict[int, int | None], x: int, y: int) -> tuple[int, ...]:
    def chain(v):
        out = [v]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    px, py = chain(x), chain(y)
    ancestors_y = set(py)
    lca = next(v for v in px if v in ancestors_y)
    left = px[: px.index(lca) + 1]
    right = py[: py.index(lca)]
    return tuple(left[::-1] + right)


def require_bipartition(g: Graph) -> Bipartition:
    b = bipartition(g)
    if isinstance(b, OddCycle):
        raise GraphError(f"graph is not bipartite (odd cycle {list(b.cycle)})")
    return b


# -- degeneracy -----------------------------------------------------------


def degeneracy_order(g: Graph) -> tuple[int, list[int]]:
    """Smallest-last elimination order; ties go to the smallest vertex id."""
    deg = g.degrees()
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[int] = set()
    order: list[int] = []
    d_max = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        d_max = max(d_max, d)
        for w in g.neighbors(v):
            if w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d_max, order


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g)[0]


# -- bridges, cut vertices, blocks --------------------------------------


@dataclass
class _DFSInfo:
    bridges: set[Edge] = field(default_factory=set)
    cut_vertices: set[int] = field(default_factory=set)
    blocks: list[set[Edge]] = field(default_factory=list)


def _lowpoint_dfs(g: Graph) -> _DFSInfo:
    info = _DFSInfo()
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    for root in g.sorted_vertices():
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        edge_stack: list[Edge] = []
        stack = [(root, None, iter(g.sorted_neighbors(root)))]
        while stack:
            x, px, it = stack[-1]
            advanced = False
            for y in it:
                if y == px:
                    continue
                if y not in disc:
                    disc[y] = low[y] = counter
                    counter += 1
                    edge_stack.append(edge(x, y))
                    stack.append((y, x, iter(g.sorted_neighbors(y))))
                    if x == root:
                        root_children += 1
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    low[x] = min(low[x], disc[y])
                    edge_stack.append(edge(x, y))
            if advanced:
                continue
            stack.pop()
            if px is None:
                continue
            low[px] = min(low[px], low[x])
            if low[x] > disc[px]:
                info.bridges.add(edge(px, x))
            if low[x] >= disc[px]:
                if px != root:
                    info.cut_vertices.add(px)
                block = set()
                pe = edge(px, x)
                while True:
                    e = edge_stack.pop()
                    block.add(e)
                    if e == pe:
                        break
                info.blocks.append(block)
        if root_children >= 2:
            info.cut_vertices.add(root)
    return info


def bridges(g: Graph) -> set[Edge]:
    return _lowpoint_dfs(g).bridges


def cut_vertices(g: Graph) -> set[int]:
    return _lowpoint_dfs(g).cut_vertices


def blocks(g: Graph) -> list[set[Edge]]:
    """Edge sets of the biconnected components (bridges form singleton blocks)."""
    return _lowpoint_dfs(g).blocks


# -- edge connectivity ----------------------------------------------------


def _unit_max_flow(g: Graph, s: int, t: int, cap_limit: int) -> int:
    """Max s-t flow with unit capacity per edge in each direction, stopped at ``cap_limit``."""
    used: dict[tuple[int, int], int] = {}
    flow = 0
    while flow < cap_limit:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in parent and used.get((x, y), 0) < 1:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            break
        y = t
        while parent[y] is not None:
            x = parent[y]
            # cancel opposing flow first, which keeps each arc in {-1, 0, 1}
            if used.get((y, x), 0) > 0:
                used[(y, x)] -= 1
            else:
                used[(x, y)] = used.get((x, y), 0) + 1
            y = x
        flow += 1
    return flow


def edge_connectivity(g: Graph) -> int:
    """Minimum edge cut, via unit-capacity max flows from the smallest vertex."""
    if g.order < 2:
        raise GraphError("edge connectivity needs at least two vertices")
    if not is_connected(g):
        raise GraphError("edge connectivity needs a connected graph")
    vs = g.sorted_vertices()
    s = vs[0]
    best = g.min_degree()
    for t in vs[1:]:
        best = min(best, _unit_max_flow(g, s, t, best))
    return best


# -- cycles ---------------------------------------------------------------


def shortest_cycle_through(g: Graph, v: int) -> tuple[int, ...] | None:
    """A shortest cycle containing ``v`` as a vertex sequence starting at ``v``, or None."""
    if v not in g:
        raise GraphError(f"vertex {v} not in graph")
    dist = {v: 0}
    parent: dict[int, int | None] = {v: None}
    branch: dict[int, int] = {}
    queue = deque()
    for w in g.sorted_neighbors(v):
        dist[w] = 1
        parent[w] = v
        branch[w] = w
        queue.append(w)
    while queue:
        x = queue.popleft()
        for y in g.sorted_neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                parent[y] = x
                branch[y] = branch[x]
                queue.append(y)
    best = None
    for x, y in g.sorted_edges():
        if x == v or y == v or x not in branch or y not in branch:
            continue
        if branch[x] == branch[y]:
            continue
        length = dist[x] + dist[y] + 1

        def path_to(z):
            out = []
            while z is not None:
                out.append(z)
                z = parent[z]
            return out[::-1]

        px, py = path_to(x), path_to(y)
        seq = tuple(px + py[::-1][:-1])
        rev = (seq[0],) + tuple(reversed(seq[1:]))
        seq = min(seq, rev)
        if best is None or (length, seq) < (len(best), best):
            best = seq
    return best


def cycle_edges(cycle: tuple[int, ...]) -> list[Edge]:
    n = len(cycle)
    return [edge(cycle[i], cycle[(i + 1) % n]) for i in range(n)]


def path_edges(path: tuple[int, ...] | list[int]) -> list[Edge]:
    return [edge(path[i], path[i + 1]) for i in range(len(path) - 1)]


# -- orientations ---------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    arcs: tuple[tuple[int, int], ...]

    def out_degree(self, v: int) -> int:
        return sum(1 for a, _ in self.arcs if a == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def out_arcs(self, v: int) -> list[tuple[int, int]]:
        return sorted(a for a in self.arcs if a[0] == v)

    def imbalance(self) -> dict[int, int]:
        """out-degree minus in-degree per vertex (vertices with no arcs omitted)."""
        out: dict[int, int] = {}
        for a, b in self.arcs:
            out[a] = out.get(a, 0) + 1
            out[b] = out.get(b, 0) - 1
        return out

    def covers(self, g: Graph) -> bool:
        es = [edge(a, b) for a, b in self.arcs]
        return len(es) == len(set(es)) and set(es) == g.edges


def almost_balanced_orientation(g: Graph) -> Orientation:
    """Orient along Euler circuits after pairing odd vertices with auxiliary edges."""
    ends: list[tuple[int, int]] = list(g.sorted_edges())
    real = len(ends)
    for comp in components(g):
        odd = sorted(v for v in comp.vertices if g.degree(v) % 2)
        for i in range(0, len(odd), 2):
            ends.append((odd[i], odd[i + 1]))
    incident: dict[int, list[int]] = {}
    for eid, (a, b) in enumerate(ends):
        incident.setdefault(a, []).append(eid)
        incident.setdefault(b, []).append(eid)
    for lst in incident.values():
        lst.reverse()  # popped from the end, so smallest edge ids are used first
    used = [False] * len(ends)
    arcs: list[tuple[int, int]] = []
    for start in sorted(incident):
        # Hierholzer; arcs are recorded as they are traversed
        stack = [start]
        while stack:
            x = stack[-1]
            lst = incident[x]
            while lst and used[lst[-1]]:
                lst.pop()
            if not lst:
                stack.pop()
                continue
            eid = lst.pop()
            used[eid] = True
            a, b = ends[eid]
            y = b if a == x else a
            if eid < real:
                arcs.append((x, y))
            stack.append(y)
    return Orientation(tuple(sorted(arcs)))
