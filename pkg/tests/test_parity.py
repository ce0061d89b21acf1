import random

import pytest
from hypothesis import given

from helpers import complete, connected_graphs, cycle, path, star
from irrdecomp import (
    ExceptionalGraphError,
    Graph,
    GraphError,
    components,
    enumerate_connected_graphs,
    find_even_parity_edge,
    find_even_parity_path2,
    is_exceptional,
    is_locally_irregular,
    reduce_odd_size,
)
from irrdecomp.generators import random_connected_graph


def all_even(g: Graph) -> bool:
    return all(c.size % 2 == 0 for c in components(g))


# -- single edges and two-edge paths ------------------------------------------------


def test_even_parity_edge_examples():
    e = find_even_parity_edge(star(3), 0)
    assert 0 in e and all_even(star(3).remove_edges([e]))
    assert find_even_parity_edge(path(3), 0) == (0, 1)
    tri = cycle(3)
    e = find_even_parity_edge(tri, 1)
    assert 1 in e and all_even(tri.remove_edges([e]))


def test_even_parity_edge_preconditions():
    with pytest.raises(GraphError):
        find_even_parity_edge(path(2), 0)
    with pytest.raises(GraphError):
        find_even_parity_edge(Graph([(0, 1), (2, 3), (3, 4)]), 0)


@given(connected_graphs())
def test_even_parity_edge_property(g):
    if g.size % 2 == 0:
        return
    for v in g.sorted_vertices():
        e = find_even_parity_edge(g, v)
        assert v in e and all_even(g.remove_edges([e]))


def test_even_parity_path2_examples():
    e, f = find_even_parity_path2(path(2), 0)
    assert {e, f} == {(0, 1), (1, 2)}
    c4 = cycle(4)
    e, f = find_even_parity_path2(c4, 2)
    assert 2 in e and set(e) & set(f) and all_even(c4.remove_edges([e, f]))
    spider = Graph([(0, 1), (0, 2), (0, 3), (3, 4)])
    e, f = find_even_parity_path2(spider, 0)
    assert 0 in e and all_even(spider.remove_edges([e, f]))


@given(connected_graphs())
def test_even_parity_path2_property(g):
    if g.size % 2 or g.size < 2:
        return
    for v in g.sorted_vertices():
        e, f = find_even_parity_path2(g, v)
        assert v in e and e != f and set(e) & set(f)
        assert all_even(g.remove_edges([e, f]))


# -- reduce_odd_size -------------------------------------------------------------


def check_reduction(g: Graph) -> Graph:
    h, rest = reduce_odd_size(g)
    assert h.size and is_locally_irregular(h)
    assert h.edges | rest.edges == g.edges and not h.edges & rest.edges
    assert all_even(rest)
    return h


def test_star_loses_a_claw():
    h = check_reduction(star(5))
    assert h.size == 3 and h.max_degree() == 3 and 0 in h


def test_triangle_is_exceptional():
    with pytest.raises(ExceptionalGraphError) as info:
        reduce_odd_size(cycle(3))
    assert info.value.reason == "odd cycle"


def test_k4_with_pendant_edge():
    check_reduction(complete(4).add_edges([(0, 4)]))


@pytest.mark.parametrize(
    "g",
    [
        star(3),
        cycle(5).add_edges([(0, 5), (5, 6)]),
        # two triangles sharing a vertex plus a pendant edge
        Graph([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 5)]),
        # odd cycle with a chord
        Graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3), (5, 7)]),
        complete(5).add_edges([(4, 5)]),
    ],
)
def test_reduction_fixtures(g):
    assert g.size % 2 == 1
    check_reduction(g)


@given(connected_graphs(max_order=10, max_extra=5))
def test_reduction_property(g):
    if g.size % 2 == 0 or is_exceptional(g):
        return
    check_reduction(g)


def test_reduction_on_random_graphs_up_to_12_edges():
    rng = random.Random(7)
    done = 0
    while done < 500:
        n = rng.randint(3, 12)
        m = rng.randint(n - 1, min(12, n * (n - 1) // 2))
        g = random_connected_graph(n, m, rng)
        if g.size % 2 == 0 or is_exceptional(g):
            continue
        check_reduction(g)
        done += 1


def test_reduction_raises_exactly_on_exceptional_graphs():
    for n in range(2, 7):
        for g in enumerate_connected_graphs(n):
            if g.size % 2 == 0:
                continue
            if is_exceptional(g):
                with pytest.raises(ExceptionalGraphError):
                    reduce_odd_size(g)
            else:
                check_reduction(g)


def test_reduction_rejects_even_size():
    with pytest.raises(GraphError):
        reduce_odd_size(cycle(4))
