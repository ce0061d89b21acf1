"""Seeded random graph families used by the CLI and the test-suite."""
from __future__ import annotations

import random

from .errors import GraphError
from .graph import Edge, Graph, edge


def _rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_connected_graph(n: int, m: int, seed: int | random.Random = 0) -> Graph:
    """Random spanning tree on 0..n-1 plus random extra edges, m edges in total."""
    if n < 1:
        raise GraphError("need at least one vertex")
    rng = _rng(seed)
    top = n * (n - 1) // 2
    m = max(n - 1, min(m, top))
    order = list(range(n))
    rng.shuffle(order)
    es = {edge(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    if m - len(es) > top // 2:
        rest = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in es]
        es.update(rng.sample(rest, m - len(es)))
    while len(es) < m:
        u, v = rng.sample(range(n), 2)
        es.add(edge(u, v))
    return Graph(es, range(n))


def random_connected_even_graph(n: int, m: int, seed: int | random.Random = 0) -> Graph:
    """Like random_connected_graph but with an even number of edges."""
    top = n * (n - 1) // 2
    m = max(n - 1, min(m, top))
    if m % 2:
        m = m + 1 if m + 1 <= top else m - 1
    if m % 2 or not n - 1 <= m <= top:
        raise GraphError(f"no connected graph on {n} vertices has even size near {m}")
    return random_connected_graph(n, m, seed)


def random_bipartite(n_a: int, n_b: int, p: float, seed: int | random.Random = 0) -> Graph:
    """G(n_a, n_b, p) on classes 0..n_a-1 and n_a..n_a+n_b-1 (not necessarily connected)."""
    if not 0 <= p <= 1:
        raise GraphError("p must lie in [0, 1]")
    rng = _rng(seed)
    es = [(i, n_a + j) for i in range(n_a) for j in range(n_b) if rng.random() < p]
    return Graph(es, range(n_a + n_b))


def random_connected_bipartite(n_a: int, n_b: int, m: int, seed: int | random.Random = 0) -> Graph:
    """Connected random bipartite graph with m edges (clamped to the feasible range)."""
    if n_a < 1 or n_b < 1:
        raise GraphError("both classes must be nonempty")
    rng = _rng(seed)
    a = list(range(n_a))
    b = list(range(n_a, n_a + n_b))
    m = max(n_a + n_b - 1, min(m, n_a * n_b))
    rng.shuffle(a)
    rng.shuffle(b)
    placed_a, placed_b = [a.pop()], [b.pop()]
    es: set[Edge] = {edge(placed_a[0], placed_b[0])}
    pending = [(x, 0) for x in a] + [(x, 1) for x in b]
    rng.shuffle(pending)
    for x, side in pending:
        other = placed_b if side == 0 else placed_a
        es.add(edge(x, rng.choice(other)))
        (placed_a if side == 0 else placed_b).append(x)
    if m - len(es) > n_a * n_b // 2:
        rest = [(i, n_a + j) for i in range(n_a) for j in range(n_b) if (i, n_a + j) not in es]
        es.update(rng.sample(rest, m - len(es)))
    while len(es) < m:
        es.add((rng.randrange(n_a), n_a + rng.randrange(n_b)))
    return Graph(es)


def random_degenerate(d: int, n: int, seed: int | random.Random = 0, even: bool = True) -> Graph:
    """Connected d-degenerate graph on about n vertices.

    Vertex i joins 1..min(d, i) random earlier vertices.  With ``even`` an
    edge of a vertex with two back-edges is dropped when the size is odd, or a
    pendant vertex appended when no such vertex exists.
    """
    if d < 1 or n < 2:
        raise GraphError("need d >= 1 and n >= 2")
    rng = _rng(seed)
    back: dict[int, list[int]] = {}
    for i in range(1, n):
        back[i] = sorted(rng.sample(range(i), rng.randint(1, min(d, i))))
    es = [(j, i) for i, js in back.items() for j in js]
    vertices = n
    if even and len(es) % 2:
        multi = [i for i, js in back.items() if len(js) >= 2]
        if multi:
            i = rng.choice(multi)
            es.remove((rng.choice(back[i]), i))
        else:
            es.append((rng.randrange(n), n))
            vertices += 1
    return Graph(es, range(vertices))
