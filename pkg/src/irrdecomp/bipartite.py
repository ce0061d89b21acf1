"""Locally irregular decompositions of bipartite graphs (at most 9 or 10 classes).

The pipeline removes a balanced forest to make one side even, a second forest
to make the other side almost odd, and finally a cycle plus a conflict path.
Each removed piece has its own small class budget.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import ExceptionalGraphError, GraphError
from .graph import (
    Bipartition,
    Edge,
    Graph,
    component_graphs,
    components,
    cycle_edges,
    edge,
    is_connected,
    path_edges,
    require_bipartition,
    shortest_cycle_through,
)
from .irregularity import (
    Decomposition,
    Reason,
    certify,
    classify_exceptional,
    is_locally_irregular,
)
from .parity import reduce_odd_size

EVEN_BOUND = 9
ODD_BOUND = 10
A_EVEN_BOUND = 7


@dataclass(frozen=True)
class BalancedForest:
    """A forest whose ``even_class`` side has only even degrees."""

    forest: Graph
    even_class: frozenset[int]

    def __post_init__(self):
        f = self.forest
        n_comp = len(components(f))
        if f.size != f.order - n_comp:
            raise GraphError("balanced forest contains a cycle")
        even = self.even_class & f.vertices
        object.__setattr__(self, "even_class", frozenset(even))
        for u, v in f.edges:
            if (u in even) == (v in even):
                raise GraphError(f"edge {(u, v)} does not cross the bipartition")
        odd = [x for x in even if f.degree(x) % 2]
        if odd:
            raise GraphError(f"vertices {sorted(odd)} of the even class have odd degree")


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[tuple[int, ...], ...]
    endpoints: frozenset[int]

    def edges(self) -> list[Edge]:
        return [e for p in self.paths for e in path_edges(p)]

    @property
    def total_length(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def is_valid_for(self, g: Graph) -> bool:
        es = self.edges()
        if len(es) != len(set(es)) or not set(es) <= g.edges:
            return False
        if any(len(set(p)) != len(p) for p in self.paths):
            return False
        ends = [x for p in self.paths for x in (p[0], p[-1])]
        return len(ends) == len(set(ends)) and set(ends) == self.endpoints


# -- path systems -------------------------------------------------------


def _forest_path(adj: dict[int, set[int]], u: int, v: int) -> list[int] | None:
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in sorted(adj.get(x, ())):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        return None
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out[::-1]


def _find_cycle(edges: set[Edge]) -> list[Edge] | None:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    seen: set[int] = set()
    for root in sorted(adj):
        if root in seen:
            continue
        parent = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            for y in sorted(adj[x]):
                if y == parent[x]:
                    continue
                if y in parent and y in seen:
                    # x-y closes a cycle through the DFS tree
                    px = [x]
                    while px[-1] != root:
                        px.append(parent[px[-1]])
                    py = [y]
                    while py[-1] != root:
                        py.append(parent[py[-1]])
                    common = set(py)
                    lca = next(z for z in px if z in common)
                    cyc = px[: px.index(lca) + 1] + py[: py.index(lca)][::-1]
                    return cycle_edges(tuple(cyc))
                if y not in parent or y not in seen:
                    parent[y] = x
                    stack.append(y)
    return None


def _tree_join(g: Graph, s: frozenset[int]) -> set[Edge]:
    root = min(g.vertices)
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.sorted_neighbors(x):
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)
    count = {v: int(v in s) for v in order}
    join = set()
    for v in reversed(order[1:]):
        if count[v] % 2:
            join.add(edge(v, parent[v]))
        count[parent[v]] += count[v]
    return join


def _improve_join(g: Graph, join: set[Edge]) -> set[Edge]:
    # every exchange keeps the odd-degree set and strictly shortens the join
    while True:
        cyc = _find_cycle(join)
        if cyc is not None:
            join ^= set(cyc)
            continue
        adj: dict[int, set[int]] = {}
        for u, v in join:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        improved = False
        for u, v in g.sorted_edges():
            if (u, v) in join:
                continue
            p = _forest_path(adj, u, v)
            if p is not None and len(p) >= 3:
                join ^= set(path_edges(p)) | {(u, v)}
                improved = True
                break
        if not improved:
            return join


def path_system(g: Graph, s: Iterable[int]) -> PathSystem:
    """Edge-disjoint paths pairing up ``s`` whose union is a forest.

    In the union every vertex of ``s`` has odd degree and every other vertex
    even degree.  Built as a spanning-tree parity join, shortened by exchanges.
    """
    s = frozenset(s)
    if len(s) % 2:
        raise GraphError("path_system needs an even number of terminals")
    if not s:
        return PathSystem((), s)
    if not is_connected(g):
        raise GraphError("path_system needs a connected graph")
    if not s <= g.vertices:
        raise GraphError("terminals must be vertices of the graph")
    join = _improve_join(g, _tree_join(g, s))
    adj: dict[int, set[int]] = {}
    for u, v in join:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    paths = []
    while True:
        starts = sorted(x for x, nb in adj.items() if len(nb) % 2)
        if not starts:
            break
        cur = starts[0]
        path = [cur]
        while adj.get(cur):
            nxt = min(adj[cur])
            adj[cur].discard(nxt)
            adj[nxt].discard(cur)
            cur = nxt
            path.append(cur)
        paths.append(tuple(path))
    assert not any(adj.values())
    ps = PathSystem(tuple(paths), s)
    assert ps.is_valid_for(g)
    return ps


# -- balanced forests ---------------------------------------------------


def _color_balanced_tree(edges: set[Edge], even: frozenset[int]) -> dict[Edge, int]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    split = [x for x in sorted(adj) if x not in even and len(adj[x]) % 2 == 0]
    if not split:
        return dict.fromkeys(edges, 1)
    v = split[0]
    out: dict[Edge, int] = {}
    for i, w in enumerate(sorted(adj[v])):
        part = {edge(v, w)}
        seen = {v, w}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    part.add(edge(x, y))
                    queue.append(y)
        sub = _color_balanced_tree(part, even)
        want = 1 if i == 0 else 2
        if sub[edge(v, w)] != want:
            sub = {e: 3 - c for e, c in sub.items()}
        out.update(sub)
    return out


def color_balanced_forest(f: BalancedForest) -> Decomposition:
    """Two classes; every vertex of the even class keeps all its edges in one class."""
    color: dict[Edge, int] = {}
    for comp in components(f.forest):
        if comp.size:
            tree_edges = {e for e in f.forest.edges if e[0] in comp.vertices}
            color.update(_color_balanced_tree(tree_edges, f.even_class))
    return certify(f.forest, color, 2)


# -- path plus cycle ----------------------------------------------------


def _alternate_pairs(vertices: list[int], classes: tuple[int, int], color: dict[Edge, int]) -> None:
    """Colour an even-length path by consecutive edge pairs, alternating classes."""
    es = path_edges(vertices)
    assert len(es) % 2 == 0
    for i in range(0, len(es), 2):
        c = classes[(i // 2) % 2]
        color[es[i]] = c
        color[es[i + 1]] = c


def decompose_path_plus_cycle(
    cycle: tuple[int, ...], path: tuple[int, ...], v: int
) -> Decomposition:
    """At most four classes for an induced even cycle through ``v`` plus a path from ``v``.

    The cycle side always uses classes 1 and 2 (and 3 only when the path is
    empty); the rest of the path uses 3 and 4.
    """
    n = len(cycle)
    if n < 4 or n % 2 or len(set(cycle)) != n or v not in cycle:
        raise GraphError("cycle must be an even cycle through v")
    if not path or path[0] != v or len(set(path)) != len(path):
        raise GraphError("path must be a simple path starting at v")
    c_edges = cycle_edges(cycle)
    p_edges = path_edges(path)
    if set(c_edges) & set(p_edges):
        raise GraphError("cycle and path must be edge-disjoint")
    on_cycle = set(cycle)
    if any(a in on_cycle and b in on_cycle for a, b in p_edges):
        raise GraphError("cycle is not induced in cycle + path")
    g = Graph(c_edges + p_edges)
    i = cycle.index(v)
    c = list(cycle[i:] + cycle[:i])
    k = len(path) - 1
    color: dict[Edge, int] = {}

    if k == 0:
        if n % 4 == 0:
            _alternate_pairs(c + [c[0]], (1, 2), color)
        else:
            _alternate_pairs(c[: n - 1], (1, 2), color)
            color[edge(c[n - 2], c[n - 1])] = 3
            color[edge(c[n - 1], c[0])] = 3
        return certify(g, color, 3)

    if k % 2 == 1:
        color[edge(v, path[1])] = 1
        if n % 4 == 0:
            color[edge(c[0], c[1])] = 1
            color[edge(c[0], c[n - 1])] = 1
            _alternate_pairs(c[1:], (2, 1), color)
        else:
            for e in (edge(c[0], c[1]), edge(c[1], c[2]), edge(c[0], c[n - 1]), edge(c[n - 1], c[n - 2])):
                color[e] = 1
            _alternate_pairs(c[2 : n - 1], (2, 1), color)
        _alternate_pairs(list(path[1:]), (3, 4), color)
        return certify(g, color, 4)

    if n % 4 == 0:
        _alternate_pairs(c + [c[0]], (1, 2), color)
        _alternate_pairs(list(path), (3, 4), color)
        return certify(g, color, 4)

    if path[2] in on_cycle:
        raise GraphError("second path edge returns to the cycle; no template applies")
    for e in (
        edge(v, path[1]),
        edge(path[1], path[2]),
        edge(c[0], c[1]),
        edge(c[1], c[2]),
        edge(c[0], c[n - 1]),
        edge(c[n - 1], c[n - 2]),
    ):
        color[e] = 1
    _alternate_pairs(c[2 : n - 1], (2, 1), color)
    _alternate_pairs(list(path[2:]), (3, 4), color)
    return certify(g, color, 4)


# -- forests that fix degree parities ----------------------------------


def make_A_even(g: Graph, b: Bipartition) -> BalancedForest:
    """Forest with leaves in A whose removal leaves every A-degree even."""
    if not is_connected(g):
        raise GraphError("make_A_even expects a connected graph")
    if g.size % 2:
        raise GraphError("make_A_even expects even size")
    s = [x for x in b.class_a if x in g and g.degree(x) % 2]
    ps = path_system(g, s)
    forest = Graph(ps.edges())
    return BalancedForest(forest, b.class_b)


def make_B_almost_odd(g: Graph, b: Bipartition, v: int) -> BalancedForest:
    """Forest with leaves in B whose removal leaves every B-degree odd except maybe at ``v``."""
    if not is_connected(g):
        raise GraphError("make_B_almost_odd expects a connected graph")
    if v not in b.class_b or v not in g:
        raise GraphError("v must be a vertex of class B")
    if any(g.degree(x) % 2 for x in b.class_a if x in g):
        raise GraphError("all A-degrees must be even")
    s = {x for x in b.class_b if x in g and g.degree(x) % 2 == 0}
    if len(s) % 2:
        s ^= {v}
    ps = path_system(g, s)
    return BalancedForest(Graph(ps.edges()), b.class_a)


def delete_conflict_path(g: Graph, b: Bipartition, v: int) -> tuple[int, ...]:
    """Greedy conflict walk from ``v``; removing its edges leaves ``g`` locally irregular."""
    if v not in g or v not in b.class_b:
        raise GraphError("v must be a vertex of class B")
    if any(g.degree(x) % 2 for x in b.class_a if x in g):
        raise GraphError("all A-degrees must be even")
    if any(g.degree(x) % 2 == 0 for x in b.class_b if x in g and x != v):
        raise GraphError("all B-degrees other than v must be odd")
    adj = {x: set(g.neighbors(x)) for x in g.vertices}
    path = [v]
    cur = v
    while True:
        same = sorted(y for y in adj[cur] if len(adj[y]) == len(adj[cur]))
        if not same:
            break
        nxt = same[0]
        adj[cur].discard(nxt)
        adj[nxt].discard(cur)
        path.append(nxt)
        cur = nxt
    rest = g.remove_edges(path_edges(path))
    assert len(set(path)) == len(path)
    assert is_locally_irregular(rest)
    return tuple(path)


# -- the composed decompositions -----------------------------------------


def _a_even_component(h: Graph, b: Bipartition, trace: list[str] | None) -> dict[Edge, int]:
    """Classes 1..7 for one connected component whose A-degrees are all even."""
    if is_locally_irregular(h):
        if trace is not None:
            trace.append("irregular")
        return dict.fromkeys(h.edges, 3)
    v = min(b.class_b & h.vertices)
    forest = make_B_almost_odd(h, b, v)
    color = dict(color_balanced_forest(forest).color)
    rest = h.remove_edges(forest.forest.edges)
    if rest.degree(v) % 2 == 1 or rest.degree(v) == 0:
        assert is_locally_irregular(rest)
        if trace is not None:
            trace.append("forest")
        color.update(dict.fromkeys(rest.edges, 3))
        return color
    home = next(c for c in components(rest) if v in c.vertices)
    others = [e for e in rest.edges if e[0] not in home.vertices]
    hv = rest.induced(home.vertices)
    color.update(dict.fromkeys(others, 3))
    cyc = shortest_cycle_through(hv, v)
    if cyc is None:
        e = hv.incident_edges(v)[0]
        split = hv.remove_edges([e])
        near = next(c for c in components(split) if v in c.vertices)
        for x in split.edges:
            color[x] = 3 if x[0] in near.vertices else 4
        color[e] = 4
        if trace is not None:
            trace.append("cut-edge")
        return color
    c_edges = cycle_edges(cyc)
    h_prime = hv.remove_edges(c_edges)
    p = delete_conflict_path(h_prime, b, v)
    p_edges = path_edges(p)
    for x in h_prime.remove_edges(p_edges).edges:
        color[x] = 3
    pc = decompose_path_plus_cycle(cyc, p, v)
    for x, c in pc.color.items():
        color[x] = 3 + c
    if trace is not None:
        trace.append("cycle-path")
    return color


def decompose_A_even(g: Graph, b: Bipartition, trace: list[str] | None = None) -> Decomposition:
    """At most 7 classes for a bipartite graph whose A-side degrees are all even."""
    b = b.restrict(g.vertices)
    if not b.is_valid_for(g):
        raise GraphError("bipartition does not match the graph")
    if any(g.degree(x) % 2 for x in b.class_a):
        raise GraphError("all A-degrees must be even")
    color: dict[Edge, int] = {}
    for h in component_graphs(g):
        color.update(_a_even_component(h, b, trace))
    return certify(g, color, A_EVEN_BOUND)


def decompose_bipartite_even(g: Graph, trace: list[str] | None = None) -> Decomposition:
    """At most 9 classes for a connected bipartite graph of even size."""
    if g.size == 0:
        return Decomposition(g, {})
    if not is_connected(g):
        raise GraphError("decompose_bipartite_even expects a connected graph")
    if g.size % 2:
        raise GraphError("decompose_bipartite_even expects even size")
    b = require_bipartition(g)
    forest = make_A_even(g, b)
    color = dict(color_balanced_forest(forest).color)
    rest = g.remove_edges(forest.forest.edges)
    for e, c in decompose_A_even(rest, b, trace).color.items():
        color[e] = c + 2
    return certify(g, color, EVEN_BOUND)


def decompose_bipartite(g: Graph) -> Decomposition:
    """At most 10 classes for a connected bipartite graph that is not an odd path."""
    require_bipartition(g)
    if g.size == 0:
        return Decomposition(g, {})
    if not is_connected(g):
        raise GraphError("decompose_bipartite expects a connected graph")
    if g.size % 2 == 0:
        return decompose_bipartite_even(g)
    reason = classify_exceptional(g)
    if reason is not Reason.NO:
        raise ExceptionalGraphError(reason.value)
    h, rest = reduce_odd_size(g)
    color = dict.fromkeys(h.edges, ODD_BOUND)
    for comp in component_graphs(rest):
        color.update(decompose_bipartite_even(comp).color)
    return certify(g, color, ODD_BOUND)
