import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import complete, complete_bipartite, connected_graphs, cycle, graphs, path, star, to_nx
from irrdecomp import (
    Bipartition,
    Graph,
    GraphError,
    OddCycle,
    ParseError,
    almost_balanced_orientation,
    bipartition,
    bridges,
    components,
    degeneracy,
    degeneracy_order,
    edge_connectivity,
    parse_edge_list,
    serialize_edge_list,
    shortest_cycle_through,
)
from irrdecomp.graph import blocks, cut_vertices, split_graph_stream


# -- Graph invariants ---------------------------------------------------------


def test_graph_rejects_loops_duplicates_and_bad_ids():
    with pytest.raises(GraphError):
        Graph([(1, 1)])
    with pytest.raises(GraphError):
        Graph([(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph([(-1, 2)])
    with pytest.raises(GraphError):
        Graph([(True, 2)])


def test_graph_is_value_like():
    g = Graph([(0, 1), (1, 2)])
    assert g == Graph([(2, 1), (1, 0)])
    assert hash(g) == hash(Graph([(1, 2), (0, 1)]))
    assert g != Graph([(0, 1), (1, 2)], [7])
    assert g.remove_edges([(1, 0)]).vertices == {0, 1, 2}
    with pytest.raises(GraphError):
        g.remove_edges([(0, 2)])


@given(graphs())
def test_degree_counts_incident_edges(g):
    for v in g.vertices:
        assert g.degree(v) == sum(1 for e in g.edges if v in e)
    for u, v in g.edges:
        assert u in g and v in g and u != v


# -- parsing ------------------------------------------------------------------


def test_parse_examples():
    g = parse_edge_list("0 1\n1 2")
    assert (g.order, g.size) == (3, 2)
    g = parse_edge_list("0 1\n2")
    assert g.edges == {(0, 1)} and g.vertices == {0, 1, 2}


@pytest.mark.parametrize(
    "text, line",
    [("0 1\n0 1", 2), ("0 1\n1 0", 2), ("3 3", 1), ("0 x", 1), ("0 1 2", 1), ("\n-1 2", 2)],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_skips_comments_and_blank_lines():
    g = parse_edge_list("# header\n\n  0 1  \n# c\n5\n")
    assert g.edges == {(0, 1)} and 5 in g


@given(graphs())
def test_serialize_round_trip(g):
    assert parse_edge_list(serialize_edge_list(g)) == g


def test_graph_stream_split():
    text = "# graph 0\n0 1\n# graph 1\n0 1\n1 2\n"
    assert [h.size for h in split_graph_stream(text)] == [1, 2]


# -- components and bipartition ----------------------------------------------------


def test_components_examples():
    comps = components(Graph([(0, 1), (2, 3)]))
    assert [(set(c.vertices), c.size, c.parity) for c in comps] == [({0, 1}, 1, "odd"), ({2, 3}, 1, "odd")]
    (c,) = components(cycle(4))
    assert (c.size, c.parity) == (4, "even")
    assert components(Graph()) == []


@given(graphs())
def test_components_partition_vertices_and_edges(g):
    comps = components(g)
    seen = set()
    for c in comps:
        assert not seen & c.vertices
        seen |= c.vertices
    assert seen == g.vertices
    assert sum(c.size for c in comps) == g.size
    assert len(comps) == (nx.number_connected_components(to_nx(g)) if g.order else 0)


def test_bipartition_examples():
    b = bipartition(cycle(4))
    assert isinstance(b, Bipartition) and len(b.class_a) == len(b.class_b) == 2
    odd = bipartition(cycle(5))
    assert isinstance(odd, OddCycle) and len(odd.cycle) == 5
    b = bipartition(complete_bipartite(3, 3))
    assert {len(b.class_a), len(b.class_b)} == {3}


@given(graphs())
def test_bipartition_is_valid_or_witnessed(g):
    b = bipartition(g)
    if isinstance(b, Bipartition):
        assert b.is_valid_for(g)
        assert nx.is_bipartite(to_nx(g))
    else:
        cyc = b.cycle
        assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
        assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


# -- degeneracy -----------------------------------------------------------------


def test_degeneracy_examples():
    assert degeneracy(path(4)) == 1
    assert degeneracy(star(5)) == 1
    assert degeneracy(complete(5)) == 4
    assert degeneracy(complete(4)) == 3


@given(graphs())
def test_degeneracy_order_replays(g):
    d, order = degeneracy_order(g)
    assert sorted(order) == g.sorted_vertices()
    remaining = set(g.vertices)
    worst = 0
    for v in order:
        r = sum(1 for w in g.neighbors(v) if w in remaining)
        assert r <= d
        worst = max(worst, r)
        remaining.discard(v)
    assert worst == d
    core = nx.core_number(to_nx(g)) if g.order else {}
    assert d == max(core.values(), default=0)


# -- bridges and blocks ------------------------------------------------------------


@given(graphs())
def test_bridges_and_cut_vertices_match_networkx(g):
    h = to_nx(g)
    assert bridges(g) == {tuple(sorted(e)) for e in nx.bridges(h)}
    assert cut_vertices(g) == set(nx.articulation_points(h))
    ours = sorted(sorted(b) for b in blocks(g))
    theirs = sorted(
        sorted({tuple(sorted(e)) for e in h.subgraph(c).edges})
        for c in nx.biconnected_components(h)
    )
    assert ours == theirs


# -- edge connectivity -------------------------------------------------------------


def test_edge_connectivity_examples():
    assert edge_connectivity(path(3)) == 1
    assert edge_connectivity(cycle(6)) == 2
    assert edge_connectivity(complete_bipartite(4, 4)) == 4


def test_edge_connectivity_k44_by_brute_force():
    g = complete_bipartite(4, 4)
    es = g.sorted_edges()
    for r in range(4):
        for cut in itertools.combinations(es, r):
            assert nx.is_connected(to_nx(g.remove_edges(cut)))


def test_edge_connectivity_preconditions():
    with pytest.raises(GraphError):
        edge_connectivity(Graph([], [0]))
    with pytest.raises(GraphError):
        edge_connectivity(Graph([(0, 1), (2, 3)]))


@given(connected_graphs())
def test_edge_connectivity_matches_networkx(g):
    if g.order < 2:
        return
    lam = edge_connectivity(g)
    assert lam <= g.min_degree()
    assert lam == nx.edge_connectivity(to_nx(g))


# -- cycles ------------------------------------------------------------------------


def test_shortest_cycle_examples():
    cyc = shortest_cycle_through(cycle(4), 0)
    assert cyc[0] == 0 and sorted(cyc) == [0, 1, 2, 3]
    assert shortest_cycle_through(path(3), 0) is None
    # triangle 0-1-2 and a hexagon 0-3-4-5-6-7 sharing only 0
    g = Graph([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0)])
    assert shortest_cycle_through(g, 0) == (0, 1, 2)


@given(connected_graphs(), st.data())
def test_shortest_cycle_is_shortest(g, data):
    v = data.draw(st.sampled_from(g.sorted_vertices()))
    cyc = shortest_cycle_through(g, v)
    h = to_nx(g)
    # the shortest cycle through v closes at some edge vw: 1 + dist(v, w) in g - vw
    best = None
    for w in g.sorted_neighbors(v):
        h.remove_edge(v, w)
        if nx.has_path(h, v, w):
            length = 1 + nx.shortest_path_length(h, v, w)
            best = length if best is None else min(best, length)
        h.add_edge(v, w)
    if best is None:
        assert cyc is None
        return
    assert cyc[0] == v and len(cyc) == best == len(set(cyc))
    assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


# -- orientations ------------------------------------------------------------------


def test_orientation_examples():
    o = almost_balanced_orientation(cycle(4))
    assert o.covers(cycle(4)) and all(x == 0 for x in o.imbalance().values())
    o = almost_balanced_orientation(Graph([(0, 1)]))
    assert o.arcs in {((0, 1),), ((1, 0),)}
    k4 = complete(4)
    o = almost_balanced_orientation(k4)
    assert all(abs(o.out_degree(v) - o.in_degree(v)) == 1 for v in k4.vertices)


@given(graphs())
@settings(max_examples=200)
def test_orientation_is_almost_balanced(g):
    o = almost_balanced_orientation(g)
    assert o.covers(g)
    for v in g.vertices:
        diff = o.out_degree(v) - o.in_degree(v)
        assert abs(diff) == g.degree(v) % 2
