"""Small named graphs and hypothesis strategies shared by the tests."""
from __future__ import annotations

import itertools

import networkx as nx
from hypothesis import strategies as st

from irrdecomp import Graph
from irrdecomp.generators import random_connected_graph


def path(m: int, start: int = 0) -> Graph:
    """Path with m edges on start..start+m."""
    return Graph([(start + i, start + i + 1) for i in range(m)], [start])


def cycle(n: int) -> Graph:
    return Graph([(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(itertools.combinations(range(n), 2), range(n))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph([(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    return Graph([(0, i) for i in range(1, k + 1)])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


@st.composite
def graphs(draw, max_order: int = 8, min_order: int = 0) -> Graph:
    """Arbitrary simple graphs, possibly disconnected, on sparse ids."""
    n = draw(st.integers(min_order, max_order))
    ids = draw(st.lists(st.integers(0, 40), min_size=n, max_size=n, unique=True))
    pairs = list(itertools.combinations(sorted(ids), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(chosen, ids)


@st.composite
def connected_graphs(draw, max_order: int = 9, max_extra: int = 8) -> Graph:
    n = draw(st.integers(1, max_order))
    extra = draw(st.integers(0, max_extra))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(n, n - 1 + extra, seed)
