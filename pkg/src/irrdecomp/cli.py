"""Command-line interface.

Exit codes: 0 success or valid certificate, 1 invalid certificate, 2 exceptional
input, 3 solver failed, 4 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Sequence

from .bipartite import EVEN_BOUND, ODD_BOUND, decompose_bipartite
from .degenerate import (
    ExactDecomposer,
    FactorDecomposer,
    chi_bound_degenerate,
    decompose_general,
    degenerate_class_bound,
    general_bound,
)
from .errors import ExceptionalGraphError, GraphError, InsufficientConnectivity, ParseError, SolverFailed
from .exact import DEFAULT_MAX_EDGES, EXCEPTIONAL, chi_irr_exact_with_witness, enumerate_connected_graphs
from .factor import decompose_16ec_bipartite
from .generators import random_bipartite, random_connected_graph, random_degenerate
from .graph import (
    Bipartition,
    Edge,
    Graph,
    bipartition,
    component_graphs,
    components,
    degeneracy,
    edge_connectivity,
    is_connected,
    parse_edge_list,
    serialize_edge_list,
)
from .irregularity import Decomposition, classify_exceptional, parse_decomposition, verify, Reason
from .parity import reduce_odd_size

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_EXCEPTIONAL = 2
EXIT_SOLVER = 3
EXIT_USAGE = 4

METHODS = ("auto", "bipartite", "degenerate", "factor", "general")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(path: str) -> Graph:
    return parse_edge_list(_read(path))


# -- decompose ------------------------------------------------------------------


def _is_bipartite(g: Graph) -> bool:
    return isinstance(bipartition(g), Bipartition)


def _method_for(args, g: Graph) -> tuple[str, Callable[[Graph], Decomposition], int]:
    """Resolve the method into (name, per-component decomposer, class bound)."""
    method = args.method
    comps = component_graphs(g)
    if method == "auto":
        method = "bipartite" if _is_bipartite(g) else "general"
    if method == "bipartite":
        odd = any(c.size % 2 for c in comps)
        return method, decompose_bipartite, ODD_BOUND if odd else EVEN_BOUND
    if method == "degenerate":
        d = args.d if args.d is not None else max((degeneracy(c) for c in comps), default=1)
        return method, lambda c: chi_bound_degenerate(c, d), degenerate_class_bound(d)
    if method == "factor":
        if not _is_bipartite(g):
            raise GraphError("the factor method needs a bipartite graph")
        if not args.force:
            for c in comps:
                lam = edge_connectivity(c) if c.order >= 2 else 0
                if lam < 16:
                    raise InsufficientConnectivity(lam, 16)

        def run(c: Graph) -> Decomposition:
            return decompose_16ec_bipartite(
                c, force=True, budget=args.budget, seed=args.seed, restarts=args.restarts
            )

        return method, run, 2
    thr = args.threshold
    if args.plugin == "factor":
        plugin = FactorDecomposer(thr, budget=args.budget, seed=args.seed)
    else:
        plugin = ExactDecomposer(thr)
    odd = any(c.size % 2 for c in comps)
    return "general", lambda c: decompose_general(c, plugin), general_bound(thr, odd, plugin.max_classes)


def _cmd_decompose(args) -> int:
    t0 = time.perf_counter()
    g = _load_graph(args.graph)
    t1 = time.perf_counter()
    method, run, bound = _method_for(args, g)
    color: dict[Edge, int] = {}
    for comp in component_graphs(g):
        color.update(run(comp).color)
    d = Decomposition(g, color)
    t2 = time.perf_counter()
    cert = verify(d, bound)
    t3 = time.perf_counter()
    out = d.to_text()
    out += f"# method: {method}\n"
    out += "# certificate: " + json.dumps(cert.to_dict(), sort_keys=True) + "\n"
    sys.stdout.write(out)
    if args.report:
        report = {
            "method": method,
            "classes": cert.class_count,
            "bound": bound,
            "valid": cert.valid,
            "timings": {"parse": t1 - t0, "decompose": t2 - t1, "verify": t3 - t2},
            "seed": args.seed,
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if cert.valid else EXIT_INVALID


# -- other subcommands ------------------------------------------------------------


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    d = parse_decomposition(g, _read(args.coloring))
    try:
        cert = verify(d, args.max_classes)
    except GraphError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(cert.to_json())
    return EXIT_OK if cert.valid else EXIT_INVALID


def _cmd_chi(args) -> int:
    if not args.exact:
        raise _UsageError("chi: only the exact solver is available; pass --exact")
    g = _load_graph(args.graph)
    comps = component_graphs(g)
    best = 0
    witness: dict[Edge, int] = {}
    for comp in comps:
        if comp.size > args.max_edges:
            raise GraphError(f"component has {comp.size} edges, above --max-edges {args.max_edges}")
        reason = classify_exceptional(comp)
        if reason is not Reason.NO:
            print(f"exceptional: {reason.value}")
            return EXIT_EXCEPTIONAL
        value, d = chi_irr_exact_with_witness(comp, args.limit, args.max_edges)
        if value == EXCEPTIONAL:
            raise AssertionError("internal error: exact search disagrees with the recogniser")
        if value is None:
            print(f"chi_irr > {args.limit}")
            return EXIT_OK
        best = max(best, value)
        witness.update(d.color)
    print(f"chi_irr = {best}")
    if args.witness:
        sys.stdout.write(Decomposition(g, witness).to_text())
    return EXIT_OK


def _cmd_reduce_odd(args) -> int:
    g = _load_graph(args.graph)
    h, rest = reduce_odd_size(g.without_isolated())
    out = "# removed\n" + serialize_edge_list(h)
    sizes = [c.size for c in components(rest) if c.size]
    out += "# remainder component sizes: " + " ".join(map(str, sizes)) + "\n"
    sys.stdout.write(out)
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.all_connected is not None:
        n = args.all_connected
        chunks = []
        for i, g in enumerate(enumerate_connected_graphs(n)):
            chunks.append(f"# graph {i}\n" + serialize_edge_list(g))
        sys.stdout.write("".join(chunks))
        return EXIT_OK
    if args.random_bipartite is not None:
        n_a, n_b, p = args.random_bipartite
        g = random_bipartite(_int(n_a), _int(n_b), _float(p), args.seed)
    elif args.random_degenerate is not None:
        d, n = args.random_degenerate
        g = random_degenerate(d, n, args.seed)
    else:
        n, m = args.random_connected
        g = random_connected_graph(n, m, args.seed)
    sys.stdout.write(serialize_edge_list(g))
    return EXIT_OK


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise _UsageError(f"expected an integer, got {tok!r}") from None


def _float(tok: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise _UsageError(f"expected a number, got {tok!r}") from None


def _cmd_stats(args) -> int:
    g = _load_graph(args.graph)
    comps = components(g)
    lam = edge_connectivity(g) if g.order >= 2 and is_connected(g) else None
    stats = {
        "order": g.order,
        "size": g.size,
        "parity": "even" if g.size % 2 == 0 else "odd",
        "components": len(comps),
        "bipartite": _is_bipartite(g),
        "degeneracy": degeneracy(g),
        "edge_connectivity": lam,
    }
    if args.json:
        print(json.dumps(stats, sort_keys=True))
    else:
        for key, value in stats.items():
            print(f"{key}: {'-' if value is None else str(value).lower()}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="irrdecomp", description="Locally irregular edge decompositions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    dp = sub.add_parser("decompose", help="decompose a graph and self-verify")
    dp.add_argument("graph", help="edge-list file, or - for stdin")
    dp.add_argument("--method", choices=METHODS, default="auto")
    dp.add_argument("--d", type=int, default=None, help="degeneracy bound (degenerate method)")
    dp.add_argument("--threshold", type=int, default=2, help="plugin minimum degree (general method)")
    dp.add_argument("--plugin", choices=("exact", "factor"), default="exact")
    dp.add_argument("--force", action="store_true", help="skip the edge-connectivity gate")
    dp.add_argument("--budget", type=int, default=10**6, help="factor search step budget")
    dp.add_argument("--restarts", type=int, default=20)
    dp.add_argument("--seed", type=int, default=0)
    dp.add_argument("--report", help="write a JSON report to this path")
    dp.set_defaults(func=_cmd_decompose)

    vp = sub.add_parser("verify", help="check a colouring")
    vp.add_argument("graph")
    vp.add_argument("coloring")
    vp.add_argument("--max-classes", type=int, default=None)
    vp.set_defaults(func=_cmd_verify)

    cp = sub.add_parser("chi", help="exact irregular chromatic index")
    cp.add_argument("graph")
    cp.add_argument("--exact", action="store_true")
    cp.add_argument("--limit", type=int, default=3)
    cp.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    cp.add_argument("--witness", action="store_true", help="also print an optimal colouring")
    cp.set_defaults(func=_cmd_chi)

    rp = sub.add_parser("reduce-odd", help="remove a small irregular subgraph leaving even components")
    rp.add_argument("graph")
    rp.set_defaults(func=_cmd_reduce_odd)

    gp = sub.add_parser("generate", help="emit graphs")
    which = gp.add_mutually_exclusive_group(required=True)
    which.add_argument("--all-connected", type=int, metavar="N")
    which.add_argument("--random-bipartite", nargs=3, metavar=("NA", "NB", "P"))
    which.add_argument("--random-degenerate", nargs=2, type=int, metavar=("D", "N"))
    which.add_argument("--random-connected", nargs=2, type=int, metavar=("N", "M"))
    gp.add_argument("--seed", type=int, default=0)
    gp.set_defaults(func=_cmd_generate)

    sp = sub.add_parser("stats", help="structural summary")
    sp.add_argument("graph")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_stats)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ExceptionalGraphError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_EXCEPTIONAL
    except InsufficientConnectivity as exc:
        print(f"{exc}; pass --force to try anyway", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverFailed as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def main() -> None:
    sys.exit(run())
