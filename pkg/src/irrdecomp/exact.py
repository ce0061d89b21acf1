"""Exact irregular chromatic index by backtracking, and small-graph enumeration.

This is the ground truth the constructive decomposers are tested against, so it
is deliberately plain: exhaustive search with two safe prunings and no
heuristics that could hide a solution.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Literal

import numpy as np

from .errors import GraphError
from .graph import Edge, Graph, is_connected
from .irregularity import Decomposition

EXCEPTIONAL: Literal["exceptional"] = "exceptional"

DEFAULT_MAX_EDGES = 25
MAX_ENUMERATION_ORDER = 7


def _search_order(g: Graph) -> list[Edge]:
    # Edges are taken so that vertices become complete as early as possible:
    # conflicts can only be detected at complete vertices.
    if not g.edges:
        return []
    pos: dict[int, int] = {}
    start = max(g.sorted_vertices(), key=lambda v: (g.degree(v), -v))
    frontier = [start]
    while len(pos) < g.order:
        if not frontier:
            rest = [v for v in g.sorted_vertices() if v not in pos]
            frontier = [max(rest, key=lambda v: (g.degree(v), -v))]
        v = frontier.pop(0)
        if v in pos:
            continue
        pos[v] = len(pos)
        # prefer neighbours with many already-placed neighbours, then high degree
        nbrs = [w for w in g.sorted_neighbors(v) if w not in pos]
        nbrs.sort(key=lambda w: (-sum(1 for x in g.neighbors(w) if x in pos), -g.degree(w), w))
        frontier.extend(nbrs)
    return sorted(g.edges, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))


def exact_decomposition(g: Graph, k: int) -> Decomposition | None:
    """A locally irregular colouring with at most ``k`` classes, or None if none exists."""
    if k < 0:
        raise GraphError("k must be nonnegative")
    order = _search_order(g)
    m = len(order)
    if m == 0:
        return Decomposition(g, {})
    if k == 0:
        return None
    remaining = {v: g.degree(v) for v in g.vertices}
    deg = [dict.fromkeys(g.vertices, 0) for _ in range(k + 1)]
    color: dict[Edge, int] = {}
    incident: dict[int, list[Edge]] = {v: g.incident_edges(v) for v in g.vertices}

    def conflict_at(x: int) -> bool:
        for e in incident[x]:
            y = e[0] if e[1] == x else e[1]
            if remaining[y] == 0:
                c = color[e]
                if deg[c][x] == deg[c][y]:
                    return True
        return False

    def rec(i: int, used: int) -> bool:
        if i == m:
            return True
        u, v = order[i]
        for c in range(1, min(used + 1, k) + 1):
            color[(u, v)] = c
            deg[c][u] += 1
            deg[c][v] += 1
            remaining[u] -= 1
            remaining[v] -= 1
            ok = not ((remaining[u] == 0 and conflict_at(u)) or (remaining[v] == 0 and conflict_at(v)))
            if ok and rec(i + 1, max(used, c)):
                return True
            remaining[u] += 1
            remaining[v] += 1
            deg[c][u] -= 1
            deg[c][v] -= 1
            del color[(u, v)]
        return False

    if rec(0, 0):
        return Decomposition(g, dict(color))
    return None


def chi_irr_exact(
    g: Graph, limit: int = 3, max_edges: int = DEFAULT_MAX_EDGES
) -> int | Literal["exceptional"] | None:
    """Irregular chromatic index of a connected graph.

    Returns the least k <= limit with a locally irregular k-colouring,
    ``EXCEPTIONAL`` when no decomposition exists at all, and None when the
    graph is decomposable but needs more than ``limit`` classes.
    """
    value, _ = chi_irr_exact_with_witness(g, limit, max_edges)
    return value


def chi_irr_exact_with_witness(
    g: Graph, limit: int = 3, max_edges: int = DEFAULT_MAX_EDGES
) -> tuple[int | Literal["exceptional"] | None, Decomposition | None]:
    if not is_connected(g):
        raise GraphError("chi_irr_exact expects a connected graph")
    if g.size > max_edges:
        raise GraphError(f"graph has {g.size} edges, above the exact-search guard of {max_edges}")
    if g.size == 0:
        return 0, Decomposition(g, {})
    for k in range(1, limit + 1):
        d = exact_decomposition(g, k)
        if d is not None:
            return k, d
    if g.size % 2 == 0:
        # even-size connected graphs split into paths of length 2
        return None, None
    # every class has at least two edges, so floor(m/2) classes is a complete bound
    complete = g.size // 2
    if complete > limit and exact_decomposition(g, complete) is not None:
        return None, None
    return EXCEPTIONAL, None


# -- enumeration ----------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    pair_index = np.full((n, n), -1, dtype=np.int64)
    for idx, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        pair_index[i, j] = pair_index[j, i] = idx
    return perms, pair_index


def canonical_code(n: int, edges: list[Edge]) -> int:
    """Minimum edge-bit encoding over all n! relabellings (exact, no refinement)."""
    if not edges:
        return 0
    perms, pair_index = _perm_tables(n)
    arr = np.asarray(edges, dtype=np.int64)
    mapped = pair_index[perms[:, arr[:, 0]], perms[:, arr[:, 1]]]
    codes = np.left_shift(np.int64(1), mapped).sum(axis=1)
    return int(codes.min())


def decode(n: int, code: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph([pairs[i] for i in range(len(pairs)) if code >> i & 1], range(n))


def enumerate_graphs(n: int, connected: bool = True) -> Iterator[Graph]:
    """All simple graphs on vertices 0..n-1 up to isomorphism, by size then canonical code."""
    if n < 0 or n > MAX_ENUMERATION_ORDER:
        raise GraphError(f"enumeration supports 0 <= n <= {MAX_ENUMERATION_ORDER}")
    if n == 0:
        if not connected:
            yield Graph()
        return
    pairs = list(itertools.combinations(range(n), 2))
    level = {0}
    for m in range(len(pairs) + 1):
        for code in sorted(level):
            g = decode(n, code)
            if not connected or is_connected(g):
                yield g
        if m == len(pairs):
            break
        nxt = set()
        for code in level:
            for i in range(len(pairs)):
                if not code >> i & 1:
                    es = [pairs[j] for j in range(len(pairs)) if code >> j & 1] + [pairs[i]]
                    nxt.add(canonical_code(n, es))
        level = nxt


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    return enumerate_graphs(n, connected=True)
