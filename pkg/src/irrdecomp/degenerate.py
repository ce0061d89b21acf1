"""Degenerate graphs: bipartite even-component partitions and the general pipeline.

A *family* here is an edge colouring ``Edge -> part index`` in which every part
is bipartite and every component of every part has even size.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Protocol, runtime_checkable

from .bipartite import EVEN_BOUND, decompose_bipartite_even
from .errors import ExceptionalGraphError, GraphError, SolverFailed
from .exact import DEFAULT_MAX_EDGES, exact_decomposition
from .graph import (
    Edge,
    Graph,
    almost_balanced_orientation,
    bipartition,
    Bipartition,
    component_graphs,
    components,
    cut_vertices,
    degeneracy,
    edge,
    is_connected,
)
from .irregularity import Decomposition, Reason, certify, classify_exceptional
from .parity import reduce_odd_size


def part_bound(d: int) -> int:
    """ceil(log2(d+1)) + 1 bipartite even-component parts for d-degenerate graphs."""
    return d.bit_length() + 1


def degenerate_class_bound(d: int) -> int:
    return EVEN_BOUND * part_bound(d)


def general_bound(threshold: int, odd_size: bool = True, plugin_classes: int = 3) -> int:
    """Class bound of the split pipeline: D is 2d-degenerate, H goes to the plugin."""
    return int(odd_size) + plugin_classes + degenerate_class_bound(2 * threshold)


# -- labels of a part ---------------------------------------------------------


class _PartLabels:
    """Components (with edge counts) and 2-colouring sides of one part."""

    def __init__(self, edges: Iterable[Edge]):
        adj: dict[int, list[int]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        self.adj = adj
        self.comp: dict[int, int] = {}
        self.side: dict[int, int] = {}
        self.size: list[int] = []
        self.bipartite = True
        for root in sorted(adj):
            if root in self.comp:
                continue
            cid = len(self.size)
            self.comp[root] = cid
            self.side[root] = 0
            degree_sum = 0
            queue = deque([root])
            while queue:
                x = queue.popleft()
                degree_sum += len(adj[x])
                for y in adj[x]:
                    if y not in self.comp:
                        self.comp[y] = cid
                        self.side[y] = 1 - self.side[x]
                        queue.append(y)
                    elif self.side[y] == self.side[x]:
                        self.bipartite = False
            self.size.append(degree_sum // 2)

    def odd_path(self, a: int, b: int) -> bool:
        """a and b are joined by a path of odd length (same component, opposite sides)."""
        if a not in self.comp or b not in self.comp:
            return False
        return self.comp[a] == self.comp[b] and self.side[a] != self.side[b]

    def even_path(self, a: int, b: int) -> bool:
        if a == b:
            return True
        if a not in self.comp or b not in self.comp:
            return False
        return self.comp[a] == self.comp[b] and self.side[a] == self.side[b]

    def component_size(self, x: int) -> int:
        return self.size[self.comp[x]] if x in self.comp else 0

    def valid(self) -> bool:
        return self.bipartite and all(s % 2 == 0 for s in self.size)


def _part_edges(color: Mapping[Edge, int], c: int) -> list[Edge]:
    return [e for e, col in color.items() if col == c]


def _bfs_path(adj: dict[int, list[int]], a: int, b: int) -> list[int]:
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in sorted(adj.get(x, ())):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    out = [b]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out[::-1]


# -- families -----------------------------------------------------------------


@dataclass(frozen=True)
class BipartitePartitionFamily:
    """Edge-disjoint parts of ``graph``; ``color`` maps each edge to its part index."""

    graph: Graph
    color: Mapping[Edge, int]
    count: int

    @property
    def parts(self) -> tuple[Graph, ...]:
        return tuple(Graph(_part_edges(self.color, c)) for c in range(self.count))

    @property
    def nonempty_count(self) -> int:
        return len(set(self.color.values()))

    def problems(self) -> list[str]:
        out = []
        if set(self.color) != set(self.graph.edges):
            out.append("parts do not partition the edge set")
        if any(not 0 <= c < self.count for c in self.color.values()):
            out.append("part index out of range")
        for c in range(self.count):
            labels = _PartLabels(_part_edges(self.color, c))
            if not labels.bipartite:
                out.append(f"part {c} is not bipartite")
            if any(s % 2 for s in labels.size):
                out.append(f"part {c} has a component of odd size")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def certify(self) -> BipartitePartitionFamily:
        probs = self.problems()
        if probs:
            raise AssertionError("internal error: invalid bipartite family: " + "; ".join(probs))
        return self


# -- choosing the edges that stay at v ----------------------------------------


def _side_pool(
    labels: _PartLabels, nbrs: list[int], must_touch: set[int] | None = None
) -> list[int]:
    """Neighbours that can share one side of some bipartition of the part.

    Each component of the part is flipped independently; within a component the
    side with more neighbours is used (ties: the side without the smallest id).
    With ``must_touch``, a neighbour in that vertex set comes first.
    """
    by_comp: dict[int, list[list[int]]] = {}
    free = []
    for w in sorted(nbrs):
        if w in labels.comp:
            by_comp.setdefault(labels.comp[w], [[], []])[labels.side[w]].append(w)
        else:
            free.append(w)
    pool: list[int] = []
    for cid in sorted(by_comp):
        s0, s1 = by_comp[cid]
        if len(s0) != len(s1):
            pool.extend(s0 if len(s0) > len(s1) else s1)
        else:
            pool.extend(s1 if min(s0 + s1) in s0 else s0)
    pool.extend(free)
    if must_touch is not None:
        hit = [w for w in pool if w in must_touch]
        if not hit:
            raise AssertionError("internal error: no neighbour in the required component")
        pool.remove(hit[0])
        pool.insert(0, hit[0])
    return pool


def _kept_neighbours(
    labels: _PartLabels, nbrs: list[int], keep: int, must_touch: set[int] | None = None
) -> list[int]:
    pool = _side_pool(labels, nbrs, must_touch)
    if len(pool) < keep:
        raise AssertionError("internal error: fewer neighbours on one side than required")
    return pool[:keep]


def halve_neighbors(g: Graph, v: int, target: int | None = None) -> set[Edge]:
    """Edges at ``v`` whose removal makes ``g`` bipartite, given that ``g - v`` is.

    Without ``target`` at most floor(deg(v)/2) edges are returned (those to the
    minority side); with ``target`` exactly that many, padded with further
    edges at ``v``.
    """
    if v not in g:
        raise GraphError(f"vertex {v} not in graph")
    rest = g.remove_vertex(v)
    if not isinstance(bipartition(rest), Bipartition):
        raise GraphError("g - v is not bipartite")
    nbrs = g.sorted_neighbors(v)
    pool = _side_pool(_PartLabels(rest.edges), nbrs)
    low = len(nbrs) - len(pool)
    if target is None:
        target = low
    if not low <= target <= len(nbrs):
        raise GraphError(f"target {target} outside [{low}, {len(nbrs)}]")
    kept = set(pool[: len(nbrs) - target])
    return {edge(v, w) for w in nbrs if w not in kept}


# -- adding a vertex of even degree --------------------------------------------


def _attach_degree_two(color: dict[Edge, int], v: int, v_edges: list[Edge], parts: list[int]) -> None:
    u1, u2 = (e[0] if e[1] == v else e[1] for e in v_edges)
    labels = {c: _PartLabels(_part_edges(color, c)) for c in parts}
    for c in parts:
        if not labels[c].odd_path(u1, u2):
            color[v_edges[0]] = c
            color[v_edges[1]] = c
            return
    c1, c2 = parts[0], parts[1]
    lab1, lab2 = labels[c1], labels[c2]
    path = _bfs_path(lab2.adj, u1, u2)
    i = next(j for j in range(len(path) - 1) if not lab1.even_path(path[j], path[j + 1]))
    color[edge(path[i], path[i + 1])] = c1
    lab2 = _PartLabels(_part_edges(color, c2))
    if lab2.component_size(u1) % 2 == 1:
        to2, to1 = u1, u2
    else:
        to2, to1 = u2, u1
    color[edge(v, to2)] = c2
    color[edge(v, to1)] = c1


def _extend(color: dict[Edge, int], v: int, v_edges: list[Edge], parts: list[int]) -> None:
    d = len(v_edges)
    if d == 0:
        return
    if d % 2:
        raise GraphError("the added vertex must have even degree")
    if len(parts) < (d - 1).bit_length() + 1:
        raise GraphError(f"{len(parts)} parts are too few for a vertex of degree {d}")
    if d == 2:
        _attach_degree_two(color, v, v_edges, parts)
        return
    d_moved = d // 2 if d % 4 == 0 else d // 2 + 1
    h = parts[-1]
    labels = _PartLabels(_part_edges(color, h))
    nbrs = [e[0] if e[1] == v else e[1] for e in v_edges]
    kept = set(_kept_neighbours(labels, nbrs, d - d_moved))
    moved = []
    for e, w in zip(v_edges, nbrs):
        if w in kept:
            color[e] = h
        else:
            moved.append(e)
    _extend(color, v, moved, parts[:-1])


def extend_even_bipartite(
    g: Graph, v: int, family: BipartitePartitionFamily, ell: int | None = None
) -> BipartitePartitionFamily:
    """Extend a family of ``g - v`` to ``g`` when ``v`` has even degree."""
    d = g.degree(v)
    ell = family.count if ell is None else ell
    if d % 2:
        raise GraphError("v must have even degree")
    if ell < (d - 1).bit_length() + 1 or ell < family.count:
        raise GraphError(f"need at least ceil(log2 {d}) + 1 parts")
    if set(family.color) != set(g.remove_vertex(v).edges):
        raise GraphError("family must cover exactly g - v")
    color = dict(family.color)
    _extend(color, v, g.incident_edges(v), list(range(ell)))
    return BipartitePartitionFamily(g, color, ell).certify()


# -- the recursion -------------------------------------------------------------


def _separation(g: Graph) -> tuple[int, set[int], set[int]] | None:
    """A cut vertex v and sides V1, V2 (sharing v) with at least 3 vertices each."""
    for v in sorted(cut_vertices(g)):
        comps = sorted(
            (c.vertices for c in components(g.remove_vertex(v))), key=lambda s: (len(s), min(s))
        )
        total = sum(len(c) for c in comps)
        singles = [c for c in comps if len(c) == 1]
        big = [c for c in comps if len(c) >= 2]
        options = []
        if len(singles) >= 2:
            options.append(singles[0] | singles[1])
        if big:
            options.append(big[0])
        for side in sorted(options, key=len):
            if total - len(side) >= 2:
                v1 = set(side) | {v}
                v2 = (g.vertices - set(side)) | {v}
                return v, v1, v2
    return None


class _Recursion:
    def __init__(self, d: int, check: bool):
        self.ell = part_bound(d)
        self.d = d
        self.check = check

    def solve(self, g: Graph) -> dict[Edge, int]:
        g = g.without_isolated()
        if g.size == 0:
            return {}
        if not is_connected(g):
            out: dict[Edge, int] = {}
            for comp in component_graphs(g):
                out.update(self.solve(comp))
            return out
        color = self._solve_connected(g)
        if self.check:
            BipartitePartitionFamily(g, color, self.ell).certify()
        return color

    def _solve_connected(self, g: Graph) -> dict[Edge, int]:
        sep = _separation(g)
        if sep is not None:
            return self._split(g, *sep)
        v = min((x for x in g.vertices if g.degree(x) > 1), key=lambda x: (g.degree(x), x))
        dv = g.degree(v)
        if dv > self.d + 1:
            raise GraphError(f"graph is not {self.d}-degenerate")
        if dv % 2 == 0:
            color = self.solve(g.remove_vertex(v))
            _extend(color, v, g.incident_edges(v), list(range(self.ell)))
            return color
        return self._odd_vertex(g, v)

    def _split(self, g: Graph, v: int, v1: set[int], v2: set[int]) -> dict[Edge, int]:
        g1, g2 = g.induced(v1), g.induced(v2)
        if g1.size % 2 == 0:
            out = self.solve(g1)
            out.update(self.solve(g2))
            return out
        fresh = max(g.vertices) + 1
        c1 = self.solve(g1.add_edges([(v, fresh)]))
        c2 = self.solve(g2.add_edges([(v, fresh + 1)]))
        a, b = c1.pop(edge(v, fresh)), c2.pop(edge(v, fresh + 1))
        # permute the second colouring so both pendant edges share a part
        swap = {a: b, b: a}
        out = dict(c1)
        out.update({e: swap.get(c, c) for e, c in c2.items()})
        return out

    def _odd_vertex(self, g: Graph, v: int) -> dict[Edge, int]:
        dv = g.degree(v)
        d_moved = (dv - 1) // 2 if dv % 4 == 1 else (dv + 1) // 2
        u = min(x for x in g.neighbors(v) if g.degree(x) > 1)
        leaves = sorted(x for x in g.neighbors(v) if g.degree(x) == 1)
        w = leaves[0] if leaves else max(g.vertices) + 1
        rest = g.remove_vertex(v)
        color = self.solve(rest.add_edges([(u, w)]))
        h = color.pop(edge(u, w))
        labels = _PartLabels(_part_edges(color, h))
        odd_comp = {x for x, cid in labels.comp.items() if cid == labels.comp.get(u, -1)}
        if labels.component_size(u) % 2 == 0:
            raise AssertionError("internal error: auxiliary edge did not leave an odd component at u")
        v_edges = g.incident_edges(v)
        nbrs = [e[0] if e[1] == v else e[1] for e in v_edges]
        kept = set(_kept_neighbours(labels, nbrs, dv - d_moved, must_touch=odd_comp))
        moved = []
        for e, x in zip(v_edges, nbrs):
            if x in kept:
                color[e] = h
            else:
                moved.append(e)
        others = [c for c in range(self.ell) if c != h]
        _extend(color, v, moved, others)
        return color


def decompose_degenerate_even(g: Graph, d: int, check: bool = False) -> BipartitePartitionFamily:
    """Split a d-degenerate graph with even components into ceil(log2(d+1))+1 bipartite
    graphs whose components all have even size.  ``check`` certifies every level."""
    if d < 0:
        raise GraphError("d must be nonnegative")
    if degeneracy(g) > d:
        raise GraphError(f"graph is {degeneracy(g)}-degenerate, not {d}-degenerate")
    odd = [c for c in components(g) if c.size % 2]
    if odd:
        raise GraphError("every component must have even size")
    rec = _Recursion(max(d, 1), check)
    color = rec.solve(g)
    return BipartitePartitionFamily(g, color, part_bound(d) if g.size else max(part_bound(d), 1)).certify()


def chi_bound_degenerate(g: Graph, d: int) -> Decomposition:
    """At most 9(ceil(log2(d+1))+1) classes: each bipartite part is decomposed separately."""
    family = decompose_degenerate_even(g, d)
    color: dict[Edge, int] = {}
    for c, part in enumerate(family.parts):
        for comp in component_graphs(part):
            for e, k in decompose_bipartite_even(comp).color.items():
                color[e] = EVEN_BOUND * c + k
    return certify(g, color, degenerate_class_bound(d))


# -- degenerate / high-minimum-degree split -------------------------------------


def _peel(g: Graph, d: int) -> set[int]:
    deg = g.degrees()
    peeled: set[int] = set()
    stack = sorted((v for v in g.vertices if deg[v] <= 2 * d), reverse=True)
    while stack:
        v = stack.pop()
        if v in peeled:
            continue
        peeled.add(v)
        for w in g.neighbors(v):
            if w not in peeled:
                deg[w] -= 1
                if deg[w] == 2 * d:
                    stack.append(w)
    return peeled


def _move_edges(h: Graph, tails: list[int], d: int, order: list[int]) -> list[Edge] | None:
    orient = almost_balanced_orientation(h)
    out_arcs: dict[int, list[int]] = {}
    for a, b in orient.arcs:
        out_arcs.setdefault(a, []).append(b)
    loss = dict.fromkeys(h.vertices, 0)
    for t in tails:
        loss[t] += 1
    moved = []
    for t in order:
        heads = sorted(out_arcs.get(t, ()), key=lambda y: (-(h.degree(y) - d - loss[y]), y))
        if not heads or h.degree(heads[0]) - d - loss[heads[0]] < 1:
            return None
        loss[heads[0]] += 1
        moved.append(edge(t, heads[0]))
    return moved


def split_degenerate_min_degree(g: Graph, d: int, seed: int = 0) -> tuple[Graph, Graph]:
    """Split ``g`` into D (2d-degenerate, even components) and H (minimum degree >= d).

    H keeps only the vertices that survive the peeling.
    """
    if d < 0:
        raise GraphError("d must be nonnegative")
    if not is_connected(g):
        raise GraphError("split_degenerate_min_degree expects a connected graph")
    if g.size % 2:
        raise GraphError("split_degenerate_min_degree expects even size")
    peeled = _peel(g, d)
    core = g.vertices - peeled
    h = g.induced(core)
    d_edges = [e for e in g.edges if e[0] in peeled or e[1] in peeled]
    odd = [c for c in components(Graph(d_edges)) if c.size % 2]
    tails = [min(c.vertices & core) for c in odd]
    moved = None
    rng = random.Random(seed)
    order = list(tails)
    for _ in range(64):
        moved = _move_edges(h, tails, d, order)
        if moved is not None:
            break
        rng.shuffle(order)
    if moved is None:
        raise SolverFailed("could not move parity edges while keeping minimum degree d")
    dg = Graph(d_edges + moved)
    hg = h.remove_edges(moved)
    assert all(c.size % 2 == 0 for c in components(dg))
    assert degeneracy(dg) <= max(2 * d, 2 if moved else 0)
    assert hg.order == 0 or hg.min_degree() >= d
    return dg, hg


# -- high minimum degree plugins and the general pipeline ----------------------


@runtime_checkable
class HighDegreeDecomposer(Protocol):
    """Decomposes graphs of minimum degree >= ``threshold`` into <= ``max_classes`` classes."""

    threshold: int
    max_classes: int

    def decompose(self, g: Graph) -> Decomposition: ...


@dataclass
class ExactDecomposer:
    """Exact search per component; only usable on small graphs."""

    threshold: int
    max_classes: int = 3
    max_edges: int = DEFAULT_MAX_EDGES

    def decompose(self, g: Graph) -> Decomposition:
        color: dict[Edge, int] = {}
        for comp in component_graphs(g):
            if comp.size > self.max_edges:
                raise SolverFailed(f"component with {comp.size} edges is too large for exact search")
            d = exact_decomposition(comp, self.max_classes)
            if d is None:
                raise SolverFailed(f"no decomposition with {self.max_classes} classes")
            color.update(d.color)
        return certify(g, color, self.max_classes)


@dataclass
class FactorDecomposer:
    """Two classes for bipartite high-degree parts via the mod-6 factor construction."""

    threshold: int
    max_classes: int = 2
    budget: int = 10**6
    seed: int = 0

    def decompose(self, g: Graph) -> Decomposition:
        from .factor import decompose_16ec_bipartite

        color: dict[Edge, int] = {}
        for comp in component_graphs(g):
            color.update(decompose_16ec_bipartite(comp, force=True, budget=self.budget, seed=self.seed).color)
        return certify(g, color, self.max_classes)


def _general_even(g: Graph, plugin: HighDegreeDecomposer, offset: int) -> dict[Edge, int]:
    dg, hg = split_degenerate_min_degree(g, plugin.threshold)
    color: dict[Edge, int] = {}
    if hg.size:
        if hg.min_degree() < plugin.threshold:
            raise AssertionError("internal error: high-degree part below the plugin threshold")
        part = plugin.decompose(hg)
        if part.k > plugin.max_classes:
            raise SolverFailed("plugin exceeded its class budget")
        color.update({e: offset + c for e, c in part.normalized().color.items()})
    if dg.size:
        lo = offset + plugin.max_classes
        deg = degeneracy(dg)
        for e, c in chi_bound_degenerate(dg, deg).color.items():
            color[e] = lo + c
    return color


def decompose_general(g: Graph, plugin: HighDegreeDecomposer) -> Decomposition:
    """Any decomposable connected graph: odd-size reduction, then the D/H split."""
    if g.size == 0:
        return Decomposition(g, {})
    if not is_connected(g):
        raise GraphError("decompose_general expects a connected graph")
    reason = classify_exceptional(g)
    if reason is not Reason.NO:
        raise ExceptionalGraphError(reason.value)
    odd = g.size % 2 == 1
    bound = general_bound(plugin.threshold, odd, plugin.max_classes)
    if not odd:
        return certify(g, _general_even(g, plugin, 0), bound)
    h, rest = reduce_odd_size(g)
    color = dict.fromkeys(h.edges, 1)
    for comp in component_graphs(rest):
        color.update(_general_even(comp, plugin, 1))
    return certify(g, color, bound)
