"""Spanning subgraphs with degrees prescribed modulo k, and two-class decompositions
of highly edge-connected bipartite graphs built from them.

Such factors are known to exist in highly connected bipartite graphs, but
``mod_k_factor`` only searches for one and returns None when its budget runs out.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import GraphError, InfeasibleTarget, InsufficientConnectivity, SolverFailed
from .graph import Bipartition, Edge, Graph, bipartition, components, edge_connectivity, require_bipartition
from .irregularity import Decomposition, certify, is_locally_irregular, verify

FACTOR_MODULUS = 6
REQUIRED_CONNECTIVITY = 16
EXHAUSTIVE_LIMIT = 16


@dataclass(frozen=True)
class ResidueTarget:
    k: int
    f: Mapping[int, int]

    def __post_init__(self):
        if self.k < 2:
            raise GraphError("modulus must be at least 2")
        object.__setattr__(self, "f", {v: r % self.k for v, r in self.f.items()})

    def covers(self, g: Graph) -> bool:
        return g.vertices <= set(self.f)


@dataclass(frozen=True)
class FactorWitness:
    graph: Graph
    target: ResidueTarget
    edges: frozenset[Edge]

    def __post_init__(self):
        if not self.edges <= self.graph.edges:
            raise GraphError("witness edges must belong to the graph")
        bad = self.defects()
        if bad:
            raise GraphError(f"degree residues wrong at vertices {sorted(bad)[:5]}")

    def degree(self, v: int) -> int:
        return sum(1 for w in self.graph.neighbors(v) if (min(v, w), max(v, w)) in self.edges)

    def defects(self) -> list[int]:
        k, f = self.target.k, self.target.f
        return [v for v in self.graph.vertices if self.degree(v) % k != f[v]]

    @property
    def subgraph(self) -> Graph:
        return Graph(self.edges, self.graph.vertices)


def residue_balance_check(g: Graph, b: Bipartition, t: ResidueTarget) -> bool:
    """Class sums of the target agree modulo k."""
    sa = sum(t.f[v] for v in b.class_a if v in g)
    sb = sum(t.f[v] for v in b.class_b if v in g)
    return (sa - sb) % t.k == 0


def _check_balance(g: Graph, t: ResidueTarget) -> None:
    for comp in components(g):
        sub = g.induced(comp.vertices)
        b = bipartition(sub)
        if isinstance(b, Bipartition) and not residue_balance_check(sub, b, t):
            raise InfeasibleTarget(
                f"infeasible (balance): class sums differ modulo {t.k} on the component of {min(comp.vertices)}"
            )
        # degrees of any subgraph sum to an even number, and for even k the
        # residues fix the parity of every degree
        if t.k % 2 == 0 and sum(t.f[v] for v in comp.vertices) % 2:
            raise InfeasibleTarget(
                f"infeasible (parity): odd residue sum on the component of {min(comp.vertices)}"
            )


# -- local search -------------------------------------------------------------


class _Search:
    """Randomised defect descent with alternating-path moves."""

    def __init__(self, g: Graph, t: ResidueTarget, rng: random.Random):
        self.g = g
        self.k = t.k
        self.f = t.f
        self.rng = rng
        self.adj = {v: g.sorted_neighbors(v) for v in g.vertices}
        self.in_h: set[Edge] = set()
        self.deg = dict.fromkeys(g.vertices, 0)
        self.toggles = 0

    def need(self, v: int) -> int:
        n = (self.f[v] - self.deg[v]) % self.k
        return n - self.k if n > self.k // 2 else n

    def total(self) -> int:
        return sum(abs(self.need(v)) for v in self.g.vertices)

    def toggle(self, e: Edge) -> None:
        u, v = e
        step = -1 if e in self.in_h else 1
        if step == 1:
            self.in_h.add(e)
        else:
            self.in_h.discard(e)
        self.deg[u] += step
        self.deg[v] += step
        self.toggles += 1

    def randomize(self, p: float) -> None:
        for e in self.g.sorted_edges():
            if (e in self.in_h) != (self.rng.random() < p):
                self.toggle(e)

    def alternating_move(self, x: int) -> bool:
        """Toggle an alternating path from x that lowers the total defect."""
        n = self.need(x)
        # with k = 2 both directions fix a parity defect
        first_add = n > 0 if 2 * abs(n) != self.k else self.rng.random() < 0.5
        start = (x, first_add)
        parent: dict[tuple[int, bool], tuple[tuple[int, bool], Edge] | None] = {start: None}
        queue = deque([start])
        found = None
        while queue and found is None:
            state = queue.popleft()
            v, add = state
            nbrs = list(self.adj[v])
            self.rng.shuffle(nbrs)
            for w in nbrs:
                e = (v, w) if v < w else (w, v)
                if (e in self.in_h) == add:
                    continue  # adding needs an absent edge, removing a present one
                nxt = (w, not add)
                if nxt in parent:
                    continue
                parent[nxt] = (state, e)
                if w != x:
                    change = 1 if add else -1
                    nw = self.need(w)
                    after = (self.f[w] - self.deg[w] - change) % self.k
                    after = after - self.k if after > self.k // 2 else after
                    if abs(after) < abs(nw):
                        found = nxt
                        break
                queue.append(nxt)
        if found is None:
            return False
        path = []
        state = found
        while parent[state] is not None:
            state, e = parent[state]
            path.append(e)
        before = self.total()
        flipped = [e for e in path if path.count(e) % 2]
        for e in flipped:
            self.toggle(e)
        if self.total() < before:
            return True
        for e in flipped:
            self.toggle(e)
        return False

    def run(self, budget: int) -> bool:
        stall = 0
        while self.toggles < budget:
            bad = [v for v in self.g.vertices if self.need(v) != 0]
            if not bad:
                return True
            x = self.rng.choice(bad)
            if self.alternating_move(x):
                stall = 0
                continue
            stall += 1
            if stall > 2 * len(bad):
                # perturb: random toggles around a defective vertex
                for _ in range(self.rng.randint(1, 3)):
                    if self.adj[x]:
                        w = self.rng.choice(self.adj[x])
                        self.toggle((min(x, w), max(x, w)))
                    x = self.rng.choice(bad)
                stall = 0
            elif self.adj[x] and self.rng.random() < 0.2:
                w = self.rng.choice(self.adj[x])
                self.toggle((min(x, w), max(x, w)))
        return False


def _exhaustive(g: Graph, t: ResidueTarget) -> frozenset[Edge] | None:
    edges = g.sorted_edges()
    m = len(edges)
    vs = g.sorted_vertices()
    if m == 0:
        return frozenset() if all(t.f[v] == 0 for v in vs) else None
    index = {v: i for i, v in enumerate(vs)}
    inc = np.zeros((m, len(vs)), dtype=np.int64)
    for j, (u, v) in enumerate(edges):
        inc[j, index[u]] = inc[j, index[v]] = 1
    want = np.array([t.f[v] for v in vs], dtype=np.int64)
    masks = np.arange(1 << m, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(m, dtype=np.int64)) & 1
    ok = np.all((bits @ inc) % t.k == want, axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    mask = int(hits[0])
    return frozenset(edges[j] for j in range(m) if mask >> j & 1)


def mod_k_factor(
    g: Graph,
    t: ResidueTarget,
    budget: int = 10**6,
    seed: int = 0,
    restarts: int = 20,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> FactorWitness | None:
    """A spanning subgraph H with deg_H(v) = f(v) mod k everywhere, or None.

    Raises InfeasibleTarget when some bipartite component fails the balance
    condition.  None means the search gave up; it is not a proof that no
    witness exists, except for graphs with at most ``exhaustive_limit`` edges,
    which are settled by enumeration.
    """
    if not t.covers(g):
        raise GraphError("target must be defined on every vertex")
    _check_balance(g, t)
    if g.size <= exhaustive_limit:
        # at this scale enumeration is cheaper than search and exact
        found = _exhaustive(g, t)
        return None if found is None else FactorWitness(g, t, found)
    rng = random.Random(seed)
    per_restart = max(1, budget // max(1, restarts))
    for attempt in range(max(1, restarts)):
        search = _Search(g, t, rng)
        if attempt:
            search.randomize(rng.random())
            search.toggles = 0
        if search.run(per_restart):
            return FactorWitness(g, t, frozenset(search.in_h))
    return None


# -- two classes for highly edge-connected bipartite graphs --------------------


@dataclass
class FactorTrace:
    branch: str = ""
    stages: list[str] = field(default_factory=list)
    witness: FactorWitness | None = None


def _near_complete(g: Graph, a: frozenset[int], b: frozenset[int]) -> bool:
    return all(len(b) - g.degree(v) <= 1 for v in a) and all(len(a) - g.degree(v) <= 1 for v in b)


def _stage_targets(g: Graph, a: frozenset[int], b: frozenset[int], u: int):
    """The sequence of (name, function) tried in the residue construction."""
    k = FACTOR_MODULUS
    f: dict[int, int] = {}
    for v in a:
        f[v] = g.degree(v) % 2
    for v in b:
        f[v] = 3 if g.degree(v) % 2 == 0 else 2

    def diff(h: Mapping[int, int]) -> int:
        return (sum(h[v] for v in a) - sum(h[v] for v in b)) % k

    def bumped(h: Mapping[int, int], picks: list[int]) -> dict[int, int]:
        out = dict(h)
        for x in picks:
            out[x] += 2
        return out

    if diff(f) == 0:
        return "f", f
    if diff(f) % 2 == 0:
        x, y = sorted(b)[:2]
        f1 = bumped(f, [x])
        return ("f1", f1) if diff(f1) == 0 else ("f2", bumped(f, [x, y]))
    gf = dict(f)
    gf[u] = 1 - f[u]
    for v in g.neighbors(u):
        if (g.degree(v) - f[v]) % k == (g.degree(u) - gf[u]) % k:
            gf[v] = f[v] + 2
    if diff(gf) == 0:
        return "g", gf
    x, y = sorted(v for v in b if not g.has_edge(u, v))[:2]
    g1 = bumped(gf, [x])
    return ("g1", g1) if diff(g1) == 0 else ("g2", bumped(gf, [x, y]))


def _check_patterns(g: Graph, a: frozenset[int], b: frozenset[int], h: Graph, u: int, stage: str) -> None:
    k = FACTOR_MODULUS
    for v in g.vertices:
        r = h.degree(v) % k
        if v in a and r not in (0, 1) or v in b and r not in (2, 3, 4, 5):
            raise AssertionError(f"internal error: residue {r} at {v} breaks the A/B pattern")
    rest = {v: g.degree(v) - h.degree(v) for v in g.vertices}
    odd_a = [v for v in a if rest[v] % 2]
    if any(rest[v] % 2 == 0 for v in b):
        raise AssertionError("internal error: complement has an even B-degree")
    if stage.startswith("g"):
        if odd_a not in ([], [u]):
            raise AssertionError("internal error: complement has an unexpected odd A-degree")
        if any(rest[v] == rest[u] for v in g.neighbors(u) if not h.has_edge(u, v)):
            raise AssertionError("internal error: u meets an equal degree in the complement")
    elif odd_a:
        raise AssertionError("internal error: complement has an odd A-degree")


def decompose_16ec_bipartite(
    g: Graph,
    force: bool = False,
    budget: int = 10**6,
    seed: int = 0,
    restarts: int = 20,
    trace: FactorTrace | None = None,
) -> Decomposition:
    """Two locally irregular classes for a 16-edge-connected bipartite graph.

    ``force`` skips the connectivity gate; success is then not guaranteed and
    failures surface as SolverFailed.
    """
    b0 = require_bipartition(g)
    if g.size == 0:
        return Decomposition(g, {})
    if not force:
        lam = edge_connectivity(g)
        if lam < REQUIRED_CONNECTIVITY:
            raise InsufficientConnectivity(lam, REQUIRED_CONNECTIVITY)
    trace = trace if trace is not None else FactorTrace()
    a, b = b0.class_a, b0.class_b
    if _near_complete(g, a, b):
        trace.branch = "near-complete"
        if len(a) < len(b):
            a, b = b, a
        if len(a) - len(b) >= 2 and is_locally_irregular(g):
            return certify(g, dict.fromkeys(g.edges, 1), 2)
        if len(b) < 2:
            raise SolverFailed("near-complete branch needs two vertices on the smaller side")
        x, y = sorted(b)[:2]
        star = {e for e in g.edges if x in e or y in e}
        color = {e: 1 if e in star else 2 for e in g.edges}
        d = Decomposition(g, color)
        if not verify(d, 2).valid:
            raise SolverFailed("near-complete split is not locally irregular (connectivity too low?)")
        return d
    trace.branch = "factor"
    u = min(
        v
        for v in g.vertices
        if (len(b) if v in a else len(a)) - g.degree(v) >= 2
    )
    if u in b:
        a, b = b, a
    stage, target = _stage_targets(g, a, b, u)
    trace.stages.append(stage)
    try:
        w = mod_k_factor(g, ResidueTarget(FACTOR_MODULUS, target), budget, seed, restarts)
    except InfeasibleTarget as exc:
        raise SolverFailed(f"stage {stage}: {exc}") from exc
    if w is None:
        raise SolverFailed(f"stage {stage}: no mod-{FACTOR_MODULUS} factor found within budget {budget}")
    trace.witness = w
    h = w.subgraph
    _check_patterns(g, a, b, h, u, stage)
    color = {e: 1 if e in w.edges else 2 for e in g.edges}
    return certify(g, color, 2)
