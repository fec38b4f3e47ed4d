"""The non-solvable (and non-nilpotent) graph of a finite group.

Vertices are group elements; ``x -- y`` is an edge when ``<x, y>`` is not
solvable (not nilpotent in nilpotent mode).  The induced graph drops the
radical, whose elements are exactly the isolated vertices.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import EmptyGraph, NotFound, UnsupportedFormat
from .group_core import FiniteGroup, conjugacy_classes, is_solvable
from .report import CheckList
from .solvabilizer import RelationMode, engine, prime_factors, solvable_radical


@dataclass
class NonSolvableGraph:
    parent: FiniteGroup
    mode: RelationMode
    vertices: np.ndarray  # element indices, ascending
    adjacency: np.ndarray  # bool, vertex positions
    degrees: np.ndarray
    radical_size: int
    induced: bool

    @property
    def n(self) -> int:
        return len(self.vertices)

    def position(self) -> np.ndarray:
        """Dense remap: element index -> vertex position, -1 if absent."""
        pos = np.full(self.parent.order, -1, dtype=np.intp)
        pos[self.vertices] = np.arange(self.n)
        return pos

    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        a, b = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(self.vertices[i]), int(self.vertices[j])) for i, j in zip(a, b)]

    def has_edge(self, x: int, y: int) -> bool:
        pos = self.position()
        return pos[x] >= 0 and pos[y] >= 0 and bool(self.adjacency[pos[x], pos[y]])


def build_graph(G: FiniteGroup, mode: RelationMode | str = RelationMode.SOLVABLE, induced: bool = True) -> NonSolvableGraph:
    mode = RelationMode(mode)
    M = engine(G, mode).matrix()
    radical = solvable_radical(G, mode)
    V = np.flatnonzero(~radical.bits) if induced else np.arange(G.order)
    adj = ~M[np.ix_(V, V)]
    adj.flags.writeable = False
    return NonSolvableGraph(G, mode, V, adj, adj.sum(axis=1), radical.size, induced)


def eccentricity(adj: np.ndarray, source: int) -> float:
    n = len(adj)
    seen = np.zeros(n, dtype=bool)
    seen[source] = True
    frontier = seen.copy()
    depth = 0
    while True:
        nxt = adj[frontier].any(axis=0) & ~seen
        if not nxt.any():
            break
        seen |= nxt
        frontier = nxt
        depth += 1
    return depth if seen.all() else math.inf


def diameter(graph: NonSolvableGraph, full_bfs: bool = False) -> float:
    """Max eccentricity; by default one BFS per conjugacy class.

    Conjugation is a graph automorphism, so eccentricity is constant on
    classes; ``full_bfs`` runs every source instead, as a cross-check.
    """
    if graph.n == 0:
        raise EmptyGraph("graph has no vertices")
    if full_bfs:
        sources = range(graph.n)
    else:
        class_of = conjugacy_classes(graph.parent).class_of[graph.vertices]
        _, sources = np.unique(class_of, return_index=True)
    return max(eccentricity(graph.adjacency, int(s)) for s in sources)


@dataclass
class DegreeStats:
    min: int | None
    max: int | None
    distinct_count: int
    multiset: dict[int, int]


def degree_stats(graph: NonSolvableGraph) -> DegreeStats:
    if graph.n == 0:
        return DegreeStats(None, None, 0, {})
    counts = Counter(int(d) for d in graph.degrees)
    return DegreeStats(min(counts), max(counts), len(counts), dict(sorted(counts.items())))


def is_irregular(graph: NonSolvableGraph) -> bool:
    if graph.n == 0:
        raise EmptyGraph("graph has no vertices")
    return degree_stats(graph).distinct_count >= 2


def _is_prime(n: int) -> bool:
    return n > 1 and prime_factors(n) == {n}


def check_degree_laws(graph: NonSolvableGraph, checks: CheckList | None = None) -> CheckList:
    """Per-vertex degree laws; nilpotent mode only runs the two that carry over."""
    checks = checks or CheckList()
    G = graph.parent
    ct = conjugacy_classes(G)
    V = graph.vertices
    deg = graph.degrees
    cent = np.asarray(ct.centralizer_orders)[ct.class_of[V]]
    orders = G.orders[V]
    prefix = "" if graph.mode is RelationMode.SOLVABLE else "nil_"

    bad = np.flatnonzero(deg % cent)
    checks.add(prefix + "centralizer_divides_degree", bad.size == 0,
               f"{graph.n} vertices", _vertex_witness(graph, bad, cent=cent))
    total = int(deg.sum())
    checks.add(prefix + "group_order_divides_degree_sum", total % G.order == 0,
               f"sum of degrees {total} = {total / G.order:g} * {G.order}")
    checks.add(prefix + "degree_sum_even", total % 2 == 0, f"sum of degrees {total}")
    if graph.mode is not RelationMode.SOLVABLE:
        return checks

    # the remaining laws concern vertices outside the radical of a non-solvable group
    live = deg > 0 if not graph.induced else np.ones(graph.n, dtype=bool)
    if not live.any():
        for name in ("order_below_degree", "twice_order_le_degree", "degree_not_prime"):
            checks.vacuous(name, "no vertex outside the radical")
        return checks
    bad = np.flatnonzero(live & ~(orders < deg))
    checks.add("order_below_degree", bad.size == 0, "", _vertex_witness(graph, bad))
    bad = np.flatnonzero(live & ~(2 * orders <= deg))
    checks.add("twice_order_le_degree", bad.size == 0, "", _vertex_witness(graph, bad))
    bad = np.flatnonzero(live & np.array([_is_prime(int(d)) for d in deg], dtype=bool))
    checks.add("degree_not_prime", bad.size == 0, "", _vertex_witness(graph, bad))
    return checks


def _vertex_witness(graph: NonSolvableGraph, bad: np.ndarray, cent=None):
    if bad.size == 0:
        return None
    v = int(bad[0])
    x = int(graph.vertices[v])
    w = {"element": x, "label": graph.parent.render(x), "degree": int(graph.degrees[v]),
         "order": int(graph.parent.orders[x])}
    if cent is not None:
        w["centralizer_order"] = int(cent[v])
    return w


@dataclass
class K44Witness:
    U: list[int]
    V: list[int]
    route: str

    def to_dict(self) -> dict:
        return {"U": self.U, "V": self.V, "route": self.route}


def _verify_k44(graph: NonSolvableGraph, U, V) -> bool:
    pos = graph.position()
    pu, pv = pos[U], pos[V]
    if (pu < 0).any() or (pv < 0).any() or len(set(U) | set(V)) != 8:
        return False
    return bool(graph.adjacency[np.ix_(pu, pv)].all())


def find_k44(graph: NonSolvableGraph) -> K44Witness:
    """A ``K_{4,4}`` subgraph: powers ``x^a`` of a vertex of prime-power order
    ``p^t`` with ``p >= 5`` against ``x^a y`` for one neighbour ``y``.

    Falls back to a backtracking search over each class when no such vertex
    works; every returned witness has had its 16 edges checked.
    """
    G = graph.parent
    if graph.n == 0 or graph.edge_count() == 0:
        raise NotFound("graph has no edges; the group is solvable")
    ct = conjugacy_classes(G)
    pos = graph.position()
    reps = [r for r in ct.representatives if pos[r] >= 0]
    reps.sort(key=lambda r: (-int(G.orders[r]), r))
    for x in reps:
        o = int(G.orders[x])
        primes = prime_factors(o)
        if len(primes) != 1 or min(primes) < 5:
            continue
        nbrs = np.flatnonzero(graph.adjacency[pos[x]])
        if not nbrs.size:
            continue
        y = int(graph.vertices[nbrs[0]])
        exps = [a for a in range(1, o) if math.gcd(a, o) == 1][:4]
        powers = [int(G.power_map(a)[x]) for a in exps]
        U = powers
        V = [int(G.table[u, y]) for u in powers]
        if _verify_k44(graph, U, V):
            return K44Witness(U, V, "constructive")
    for x in reps:
        members = [int(pos[i]) for i in ct.members(ct.class_of[x])]
        found = _search_k44(graph.adjacency, members)
        if found is not None:
            pu, pv = found
            U = [int(graph.vertices[i]) for i in pu]
            V = [int(graph.vertices[i]) for i in pv]
            if _verify_k44(graph, U, V):
                return K44Witness(U, V, "exhaustive")
    raise NotFound("no K4,4 subgraph found")


def _search_k44(adj: np.ndarray, candidates: list[int]) -> tuple[list[int], list[int]] | None:
    def extend(chosen: list[int], common: np.ndarray, start: int):
        if len(chosen) == 4:
            return chosen, [int(i) for i in np.flatnonzero(common)[:4]]
        for k in range(start, len(candidates)):
            c = candidates[k]
            nxt = common & adj[c]
            if nxt.sum() >= 4:
                got = extend(chosen + [c], nxt, k + 1)
                if got:
                    return got
        return None

    return extend([], np.ones(len(adj), dtype=bool), 0)


def verify_graph_laws(G: FiniteGroup, full_bfs: bool | None = None, include_nilpotent: bool = True) -> tuple[CheckList, dict]:
    """Run every graph law on ``G``; returns the checks and summary stats."""
    checks = CheckList()
    solvable = is_solvable(G.full_set())
    full = build_graph(G, RelationMode.SOLVABLE, induced=False)
    ind = build_graph(G, RelationMode.SOLVABLE, induced=True)
    eng = engine(G, RelationMode.SOLVABLE)
    ct = conjugacy_classes(G)
    n_order = G.order

    checks.add("graph_empty_iff_solvable", (full.edge_count() == 0) == solvable,
               f"{full.edge_count()} edges, solvable={solvable}")
    isolated = full.degrees == 0
    radical = solvable_radical(G)
    checks.add("radical_is_isolated_set", bool(np.array_equal(isolated, radical.bits)),
               f"{int(isolated.sum())} isolated vertices, radical size {radical.size}")
    A = full.adjacency
    checks.add("adjacency_symmetric_irreflexive",
               bool(np.array_equal(A, A.T) and not A.diagonal().any()))
    bad_g = None
    for g in G.generators:
        cmap = G.conjugation_map(g)
        if not np.array_equal(A[np.ix_(cmap, cmap)], A):
            bad_g = g
            break
    checks.add("conjugation_is_automorphism", bad_g is None, "", bad_g)
    # degree against an untransported sweep of every class representative
    dual_bad = []
    for r in ct.representatives:
        direct = eng.sweep(r)
        if n_order - int(direct.sum()) != int(full.degrees[r]) or not np.array_equal(~direct, A[r]):
            dual_bad.append(r)
    checks.add("degree_solvabilizer_duality", not dual_bad, "deg(x) = |G| - |sol(x)| per class",
               dual_bad[:1] or None)
    check_degree_laws(full, checks)

    stats: dict = {"n": ind.n, "edges": ind.edge_count()}
    full_stats = degree_stats(full)
    checks.add("full_degree_count_not_two", full_stats.distinct_count != 2,
               f"distinct degrees on the full graph: {sorted(full_stats.multiset)}")
    stats["full_distinct_degrees"] = full_stats.distinct_count
    if solvable:
        for name in ("diameter_at_most_two", "diameter_not_one", "max_degree_below_n_minus_1",
                     "min_degree_above_five", "k44_subgraph", "not_planar", "induced_irregular"):
            checks.vacuous(name, "group is solvable")
    else:
        d = diameter(ind)
        stats["diameter"] = d if d != math.inf else "inf"
        checks.add("diameter_at_most_two", d <= 2, f"diameter {d}")
        checks.add("diameter_not_one", d != 1, f"diameter {d}")
        if full_bfs is None:
            full_bfs = G.order <= 360
        if full_bfs:
            d_full = diameter(ind, full_bfs=True)
            checks.add("diameter_full_bfs_agrees", d_full == d, f"class BFS {d}, full BFS {d_full}")
        ds = degree_stats(ind)
        stats.update(min_degree=ds.min, max_degree=ds.max, distinct_degrees=ds.distinct_count)
        checks.add("max_degree_below_n_minus_1", ds.max < ind.n - 1, f"max {ds.max}, n-1 = {ind.n - 1}")
        checks.add("min_degree_above_five", ds.min > 5, f"min {ds.min}")
        try:
            w = find_k44(ind)
            checks.add("k44_subgraph", True, f"{w.route} witness", w.to_dict())
            stats["k44"] = w.to_dict()
            checks.add("not_planar", True, "certified by the K4,4 witness")
        except NotFound as exc:
            checks.add("k44_subgraph", False, str(exc))
            checks.add("not_planar", ds.min > 5, "certified only by minimum degree > 5")
        checks.add("induced_irregular", is_irregular(ind), f"{ds.distinct_count} distinct degrees")

    if include_nilpotent:
        nfull = build_graph(G, RelationMode.NILPOTENT, induced=False)
        NA = nfull.adjacency
        missing = np.argwhere(A & ~NA)
        checks.add("solvable_graph_within_nilpotent_graph", missing.size == 0, "",
                   missing[0].tolist() if missing.size else None)
        check_degree_laws(nfull, checks)
        nstats = degree_stats(nfull)
        checks.add("nil_full_degree_count_not_two", nstats.distinct_count != 2,
                   f"distinct degrees: {sorted(nstats.multiset)}")
        nind = build_graph(G, RelationMode.NILPOTENT, induced=True)
        if nind.n == 0:
            checks.vacuous("nil_induced_irregular", "group is nilpotent")
        else:
            checks.add("nil_induced_irregular", is_irregular(nind),
                       f"{degree_stats(nind).distinct_count} distinct degrees")
    return checks, stats


# --- export ----------------------------------------------------------------

def graph_document(graph: NonSolvableGraph, report: dict | None = None) -> dict:
    G = graph.parent
    doc = {
        "group": {"label": G.label, "order": G.order, "radical_size": graph.radical_size},
        "mode": graph.mode.value,
        "vertices": [
            {"index": int(x), "label": G.render(int(x)), "degree": int(d), "order": int(G.orders[x])}
            for x, d in zip(graph.vertices, graph.degrees)
        ],
        "edges": [list(e) for e in graph.edges()],
    }
    if report is not None:
        doc["report"] = report
    return doc


def export_graph(graph: NonSolvableGraph, fmt: str = "json", report: dict | None = None) -> bytes:
    if fmt == "json":
        return (json.dumps(graph_document(graph, report), indent=1, ensure_ascii=False) + "\n").encode()
    if fmt == "dot":
        G = graph.parent
        name = f"{'non_nilpotent' if graph.mode is RelationMode.NILPOTENT else 'non_solvable'} {G.label}"
        lines = [f"graph {json.dumps(name)} {{"]
        for x in graph.vertices:
            lines.append(f"  {int(x)} [label={json.dumps(G.render(int(x)))}];")
        for a, b in graph.edges():
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise UnsupportedFormat(f"unsupported graph format {fmt!r}; use dot or json")
