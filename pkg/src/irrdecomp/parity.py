"""Reduction of odd-size graphs to graphs whose components all have even size.

`reduce_odd_size` is the constructive reading of a proof by minimal
counterexample: each case of the case analysis is tried in turn, every
candidate removal is certified (locally irregular, all remaining components
even), and the first certified one is returned.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Callable, Iterable

from .errors import ExceptionalGraphError, GraphError
from .graph import (
    Edge,
    Graph,
    blocks,
    bridges,
    components,
    cycle_edges,
    cut_vertices,
    edge,
    is_connected,
    shortest_cycle_through,
)
from .irregularity import Reason, classify_exceptional, edges_locally_irregular, triangles


def _require_connected_with_vertex(g: Graph, v: int) -> None:
    if not is_connected(g):
        raise GraphError("graph must be connected")
    if v not in g or g.degree(v) < 1:
        raise GraphError(f"vertex {v} must have positive degree")


def find_even_parity_edge(g: Graph, v: int) -> Edge:
    """An edge at ``v`` whose removal leaves only even-size components.

    Precondition: ``g`` connected of odd size.
    """
    _require_connected_with_vertex(g, v)
    if g.size % 2 == 0:
        raise GraphError("find_even_parity_edge needs odd size")
    cut = bridges(g)
    at_v = g.incident_edges(v)
    for e in at_v:
        if e not in cut:
            return e
    for e in at_v:
        far = e[0] if e[1] == v else e[1]
        rest = g.remove_edges([e])
        far_size = sum(rest.degree(x) for x in _component_of(rest, far)) // 2
        if (far_size + 1) % 2 == 1:
            return e
    raise AssertionError("unreachable: some cut edge has an odd far side")


def find_even_parity_path2(g: Graph, v: int) -> tuple[Edge, Edge]:
    """Two adjacent edges ``(e, f)`` with ``e`` at ``v`` leaving only even components.

    Precondition: ``g`` connected of even size >= 2.
    """
    _require_connected_with_vertex(g, v)
    if g.size % 2 or g.size < 2:
        raise GraphError("find_even_parity_path2 needs even size >= 2")
    e = g.incident_edges(v)[0]
    rest = g.remove_edges([e])
    w = e[0] if e[1] == v else e[1]
    odd = [c for c in components(rest) if c.size % 2 == 1]
    assert len(odd) == 1
    odd_vertices = odd[0].vertices
    u = v if v in odd_vertices else w
    f = find_even_parity_edge(rest.induced(odd_vertices), u)
    return e, f


def _component_of(g: Graph, v: int) -> set[int]:
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_valid_removal(g: Graph, h: Iterable[Edge]) -> bool:
    """``h`` is a locally irregular edge set and ``g - h`` has only even components."""
    hs = [edge(*e) for e in h]
    if len(set(hs)) != len(hs) or not set(hs) <= g.edges:
        return False
    if not edges_locally_irregular(hs):
        return False
    return all(c.size % 2 == 0 for c in components(g.remove_edges(hs)))


def _finish_at(g: Graph, removed: list[Edge], v: int) -> list[Edge] | None:
    """Complete ``removed`` with one more edge at ``v``, if parities allow."""
    rest = g.remove_edges(removed)
    comps = components(rest)
    home = next(c for c in comps if v in c.vertices)
    if home.size % 2 == 0 or any(c.size % 2 for c in comps if c is not home):
        return None
    sub = rest.induced(home.vertices)
    if sub.degree(v) == 0:
        return None
    return removed + [find_even_parity_edge(sub, v)]


def _accept(g: Graph, h: list[Edge] | None) -> list[Edge] | None:
    if h is not None and is_valid_removal(g, h):
        return sorted(edge(*e) for e in h)
    return None


def _noncut_claw(g: Graph) -> list[Edge] | None:
    cut = cut_vertices(g)
    for v in g.sorted_vertices():
        if g.degree(v) >= 3 and v not in cut:
            h = _accept(g, _finish_at(g, g.incident_edges(v)[:2], v))
            if h:
                return h
    return None


def _long_cycle_in_block(g: Graph, block_edges: set[Edge]) -> tuple[int, ...] | None:
    b = Graph(block_edges)
    if b.order < 4:
        return None
    c0 = shortest_cycle_through(b, min(b.vertices))
    if c0 is not None and len(c0) >= 4:
        return c0
    for tri in triangles(b):
        for x in tri:
            y, z = [t for t in tri if t != x]
            for w in b.sorted_neighbors(x):
                if w in tri:
                    continue
                # walk from w to {y, z} avoiding x; the cycle x-w-...-y-z-x has length >= 4
                parent = {w: None}
                queue = deque([w])
                hit = None
                while queue and hit is None:
                    a = queue.popleft()
                    for c in b.sorted_neighbors(a):
                        if c == x or c in parent:
                            continue
                        parent[c] = a
                        if c in (y, z):
                            hit = c
                            break
                        queue.append(c)
                if hit is None:
                    continue
                path = [hit]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                other = z if hit == y else y
                return tuple([x] + path + [other])
    return None


def _candidate_cycles(g: Graph) -> list[tuple[int, ...]]:
    seen: set[frozenset[Edge]] = set()
    out = []
    cands = []
    for blk in blocks(g):
        c = _long_cycle_in_block(g, blk)
        if c is not None:
            cands.append(c)
    for v in g.sorted_vertices():
        if g.degree(v) >= 3:
            c = shortest_cycle_through(g, v)
            if c is not None:
                cands.append(c)
    for c in cands:
        key = frozenset(cycle_edges(c))
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def _cycle_case(g: Graph, cyc: tuple[int, ...], v: int) -> list[Edge] | None:
    n = len(cyc)
    i = cyc.index(v)
    prev, nxt = cyc[(i - 1) % n], cyc[(i + 1) % n]
    ec = [edge(prev, v), edge(v, nxt)]
    rest = g.remove_edges(ec)
    comps = components(rest)
    home = next(c for c in comps if v in c.vertices)
    if home.size % 2 == 1:
        return _accept(g, _finish_at(g, ec, v))
    sub = rest.induced(home.vertices)
    if sub.size == 0:
        return None
    e, f = find_even_parity_path2(sub, v)
    shared = set(e) & set(f)
    if v in shared:
        for c_edge in ec:
            h = _accept(g, [e, f, c_edge])
            if h:
                return h
        return None
    if n < 4:
        return None
    # spider centred at v: the path P_v, both cycle edges, and one more edge
    # continuing the cycle side (the cycle's own next edge first)
    for end, other in ((nxt, prev), (prev, nxt)):
        options = [edge(end, cyc[(cyc.index(end) + (1 if end == nxt else -1)) % n])]
        options += [x for x in rest.incident_edges(end) if x not in options]
        for third in options:
            if v in third or other in third:
                continue
            h = _accept(g, [e, f] + ec + [third])
            if h:
                return h
    return None


def _cycle_removal(g: Graph) -> list[Edge] | None:
    for cyc in _candidate_cycles(g):
        for v in sorted(cyc):
            if g.degree(v) >= 3:
                h = _cycle_case(g, cyc, v)
                if h:
                    return h
    return None


def _two_triangle_claw(g: Graph) -> list[Edge] | None:
    tris = triangles(g)
    for t1, t2 in combinations(tris, 2):
        for v in sorted(set(t1) & set(t2)):
            for e1 in (edge(v, x) for x in t1 if x != v):
                for e2 in (edge(v, x) for x in t2 if x != v):
                    if e1 == e2:
                        continue
                    h = _accept(g, _finish_at(g, [e1, e2], v))
                    if h:
                        return h
    return None


def _odd_part(g: Graph) -> set[int] | None:
    odd = [c for c in components(g) if c.size % 2 == 1]
    return set(odd[0].vertices) if len(odd) == 1 else None


def _induced_claw_removal(g: Graph) -> list[Edge] | None:
    for v in g.sorted_vertices():
        if g.degree(v) < 3:
            continue
        nbrs = g.sorted_neighbors(v)
        for u in nbrs:
            uv = edge(u, v)
            g1 = g.remove_edges([uv])
            if any(c.size % 2 for c in components(g1)):
                continue
            for u1, u2 in combinations([x for x in nbrs if x != u], 2):
                if g.has_edge(u, u1) or g.has_edge(u, u2) or g.has_edge(u1, u2):
                    continue
                branches = []
                for ui in (u1, u2):
                    gi = g1.remove_edges([edge(ui, v)])
                    part = _odd_part(gi)
                    if part is None:
                        break
                    sub = gi.induced(part)
                    if v in part:
                        if sub.degree(v) > 0:
                            h = _accept(g, [uv, edge(ui, v), find_even_parity_edge(sub, v)])
                            if h:
                                return h
                        break
                    if sub.degree(ui) == 0:
                        break
                    branches.append([edge(ui, v), find_even_parity_edge(sub, ui)])
                if len(branches) == 2:
                    h = _accept(g, [uv] + branches[0] + branches[1])
                    if h:
                        return h
    return None


_CASES: tuple[Callable[[Graph], list[Edge] | None], ...] = (
    _noncut_claw,
    _cycle_removal,
    _two_triangle_claw,
    _induced_claw_removal,
)


def reduce_odd_size(g: Graph) -> tuple[Graph, Graph]:
    """Split a decomposable connected odd-size graph into ``(h, rest)``.

    ``h`` is locally irregular (a claw or a spider with short legs), and every
    component of ``rest = g - E(h)`` has even size.  ``rest`` keeps all vertices
    of ``g``.  Raises ExceptionalGraphError on exceptional input.
    """
    if not is_connected(g):
        raise GraphError("reduce_odd_size expects a connected graph")
    if g.size % 2 == 0:
        raise GraphError("reduce_odd_size expects odd size")
    reason = classify_exceptional(g)
    if reason is not Reason.NO:
        raise ExceptionalGraphError(reason.value)
    for case in _CASES:
        h = case(g)
        if h is not None:
            return g.edge_subgraph(h), g.remove_edges(h)
    raise AssertionError("internal error: no removal found for a decomposable graph")
