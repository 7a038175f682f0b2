"""Offline side: the canonical optimal sequence and everything derived from it."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .graph import Digraph, GraphError, TraversalProfile, Walk, double_orient, \
    is_strongly_connected, profile_of
from .search import MAX_EXACT_N, optimal_walk


class OracleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OptimalSolution:
    """S* for one instance and closure.

    ``oriented`` is the graph the profile counts live on: ``graph`` itself when
    directed, its double orientation otherwise. Edge ids in ``last_out`` and
    the profile refer to ``oriented``.
    """

    graph: Digraph
    closure: str
    walk: Walk
    oriented: Digraph
    profile: TraversalProfile
    directed_walk: tuple = field(repr=False)

    @property
    def cost(self) -> int:
        return self.walk.base_cost(self.graph)

    @property
    def end(self):
        return self.walk.end

    @property
    def n(self) -> int:
        return self.graph.n

    def first_visits(self) -> list:
        seen, order = set(), []
        for v in self.walk.vertices:
            if v not in seen:
                seen.add(v)
                order.append(v)
        return order

    def closed_counts(self) -> dict:
        """Counts with the closing edge ``(end, start)`` under key 0 for paths."""
        counts = dict(self.profile.counts)
        if self.closure == "path":
            counts[0] = 1
        return counts

    def closed_edges(self) -> list:
        """``(id, src, dst)`` for every oriented edge, plus the closing edge."""
        out = [(e.id, e.src, e.dst) for e in self.oriented.edges]
        if self.closure == "path":
            out.append((0, self.end, self.graph.start))
        return out

    def last_times(self) -> dict:
        """Position of the final traversal of each used edge in the closed walk."""
        times = {eid: j for j, eid in enumerate(self.directed_walk)}
        if self.closure == "path":
            times[0] = len(self.directed_walk)
        return times


def check_connectivity(g: Digraph, closure: str) -> None:
    if closure == "cyclic":
        if not is_strongly_connected(g):
            raise OracleError("cyclic exploration needs a strongly connected graph")
        return
    seen = {g.start}
    todo = [g.start]
    while todo:
        v = todo.pop()
        for _, w in g.arcs(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if len(seen) != g.n:
        raise OracleError("some vertex is unreachable from the start")


def solve(g: Digraph, closure: str = "cyclic", limit: int = MAX_EXACT_N,
          backend: str | None = None) -> OptimalSolution:
    check_connectivity(g, closure)
    walk = optimal_walk(g, closure, limit=limit, backend=backend)
    prof = profile_of(walk, g)
    oriented = g if g.directed else double_orient(g)
    return OptimalSolution(g, closure, walk, oriented, prof, tuple(walk.oriented_edges(g)))


def classify(sol: OptimalSolution):
    p = sol.profile
    return p.E0, p.E1, p.E_multi


def _pair_label(oriented, counts, a, b, far):
    ca, cb = counts[a.id], counts[b.id]
    if ca != cb:
        return (a, b) if ca < cb else (b, a)
    ka = (oriented.index[far(a)], a.id)
    kb = (oriented.index[far(b)], b.id)
    return (b, a) if ka < kb else (a, b)


def label_heavy_light(sol: OptimalSolution):
    """``(light, heavy)`` edge ids at vertices with exactly two multi-edges.

    Ties go to the edge whose far endpoint (then edge id) is smaller: it is
    declared heavy.
    """
    g = sol.oriented
    counts = sol.profile.counts
    out_pairs, in_pairs = {}, {}
    for v in g.vertices:
        outs = [e for e in g.out_edges(v) if counts[e.id] >= 2]
        if len(outs) == 2:
            light, heavy = _pair_label(g, counts, outs[0], outs[1], lambda e: e.dst)
            out_pairs[v] = (light.id, heavy.id)
        ins = [e for e in g.in_edges(v) if counts[e.id] >= 2]
        if len(ins) == 2:
            light, heavy = _pair_label(g, counts, ins[0], ins[1], lambda e: e.src)
            in_pairs[v] = (light.id, heavy.id)
    return out_pairs, in_pairs


def label_last(sol: OptimalSolution) -> dict:
    """Edge id of the final departure from each vertex of the walk."""
    last = {}
    for v, eid in zip(sol.walk.vertices, sol.directed_walk):
        last[v] = eid
    return last


def _undirected_forest_ok(edges) -> bool:
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, s, d in edges:
        a, b = find(s), find(d)
        if a == b:
            return False
        parent[a] = b
    return True


def cycle_decomposition(vertices: tuple) -> list:
    """Split a closed walk into simple cycles by loop erasure."""
    stack = [vertices[0]]
    cycles = []
    for v in vertices[1:]:
        if v in stack:
            j = stack.index(v)
            cycles.append(tuple(stack[j:]) + (v,))
            del stack[j + 1:]
        else:
            stack.append(v)
    return cycles


@dataclass
class StructureReport:
    checks: dict
    representative_sum: int
    cycles: int

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list:
        return [k for k, v in self.checks.items() if not v]


def validate_profile(oriented: Digraph, counts: dict, closed_vertices: tuple,
                     extra_edges=()) -> StructureReport:
    """Structural checks on a traversal profile and its closed walk."""
    n, m = oriented.n, oriented.m
    edges = [(e.id, e.src, e.dst) for e in oriented.edges] + list(extra_edges)
    cnt = dict(counts)
    multi = [t for t in edges if cnt.get(t[0], 0) >= 2]
    once = [t for t in edges if cnt.get(t[0], 0) == 1]
    multi_pairs = {(s, d) for _, s, d in multi}
    checks = {}
    checks["no_once_multi_opposite"] = not any((d, s) in multi_pairs for _, s, d in once)
    checks["multi_forest"] = _undirected_forest_ok(multi)
    checks["count_le_n"] = max(cnt.values(), default=0) <= n
    out_trav = Counter()
    for eid, s, _ in edges:
        out_trav[s] += cnt.get(eid, 0)
    checks["traversals_le_n"] = max(out_trav.values(), default=0) <= n

    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for _, s, d in multi:
        parent[find(s)] = find(d)
    reps = {}
    for v in list(parent):
        r = find(v)
        reps[r] = max(reps.get(r, 0), out_trav[v])
    rep_sum = sum(reps.values())
    checks["representative_sum_le_m"] = rep_sum <= m
    cycles = cycle_decomposition(closed_vertices)
    checks["cycles_le_n"] = len(cycles) <= n
    return StructureReport(checks, rep_sum, len(cycles))


def validate_structure(sol: OptimalSolution) -> StructureReport:
    closed = sol.walk.vertices
    extra = ()
    if sol.closure == "path":
        closed = closed + (sol.graph.start,)
        extra = ((0, sol.end, sol.graph.start),)
    return validate_profile(sol.oriented, sol.closed_counts(), closed, extra)


def is_expandable(sol: OptimalSolution, prefix: Walk) -> bool:
    """Can ``prefix`` be completed to a walk with exactly the profile of S*?"""
    g = sol.oriented
    counts = sol.profile.counts
    used = Counter(prefix.oriented_edges(sol.graph))
    residual = {}
    for eid, c in counts.items():
        r = c - used.get(eid, 0)
        if r < 0:
            raise OracleError(f"prefix exceeds the traversals of edge {eid}")
        if r:
            residual[eid] = r
    for eid in used:
        if eid not in counts:
            raise OracleError(f"prefix uses unknown edge {eid}")
    at = prefix.end
    target = sol.end
    if not residual:
        return False
    if not any(e.id in residual for e in g.out_edges(at)):
        return False
    bal = Counter()
    for eid, r in residual.items():
        e = g.edge(eid)
        bal[e.src] += r
        bal[e.dst] -= r
    want = Counter()
    if at != target:
        want[at] += 1
        want[target] -= 1
    for v in g.vertices:
        if bal[v] != want[v]:
            return False
    # every residual edge must hang together with the current position
    adj = {}
    for eid in residual:
        e = g.edge(eid)
        adj.setdefault(e.src, set()).add(e.dst)
        adj.setdefault(e.dst, set()).add(e.src)
    seen = {at}
    todo = [at]
    while todo:
        v = todo.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if not all(v in seen for v in adj):
        return False
    unvisited = set(g.vertices) - set(prefix.vertices)
    return unvisited <= seen
