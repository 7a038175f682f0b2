"""Graphs, walks, traversal profiles and the exact cost perturbation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: int
    src: object
    dst: object
    cost: int


@dataclass(frozen=True, eq=False)
class Digraph:
    """Immutable multigraph. Edge ids are 1-based in input order.

    For an undirected graph ``src``/``dst`` only record the orientation the
    edge was listed with.
    """

    vertices: tuple
    edges: tuple
    start: object
    directed: bool = True
    index: dict = field(init=False, repr=False)
    _out: dict = field(init=False, repr=False)
    _in: dict = field(init=False, repr=False)

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.vertices)}
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
            inc[e.dst].append(e)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})
        object.__setattr__(self, "_in", {v: tuple(es) for v, es in inc.items()})

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, eid: int) -> Edge:
        return self.edges[eid - 1]

    def out_edges(self, v) -> tuple:
        return self._out[v]

    def in_edges(self, v) -> tuple:
        return self._in[v]

    def incident(self, v) -> tuple:
        """Edges touching ``v`` (both lists for undirected graphs), by id."""
        return tuple(sorted(set(self._out[v]) | set(self._in[v]), key=lambda e: e.id))

    def arcs(self, v):
        """Yield ``(edge, head)`` for every way to leave ``v``."""
        if self.directed:
            for e in self._out[v]:
                yield e, e.dst
        else:
            for e in self.incident(v):
                yield e, (e.dst if e.src == v else e.src)

    def is_unit_cost(self) -> bool:
        return all(e.cost == 1 for e in self.edges)

    def to_dict(self) -> dict:
        return {
            "directed": self.directed,
            "start": self.start,
            "vertices": list(self.vertices),
            "edges": [{"src": e.src, "dst": e.dst, "cost": e.cost} for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def make_graph(vertices: Iterable, edges: Iterable, start, directed: bool = True) -> Digraph:
    """Validate and build a graph from ``(src, dst, cost)`` triples."""
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        raise GraphError("duplicate vertex id")
    try:
        order = tuple(sorted(vs))
    except TypeError as exc:
        raise GraphError("vertex ids must be mutually comparable") from exc
    known = set(order)
    if start not in known:
        raise GraphError(f"start vertex {start!r} not declared")
    built = []
    for i, (src, dst, cost) in enumerate(edges, start=1):
        if src not in known or dst not in known:
            raise GraphError(f"edge {i} references an undeclared vertex")
        if src == dst:
            raise GraphError(f"edge {i} is a self-loop")
        if isinstance(cost, bool) or not isinstance(cost, int) or cost < 0:
            raise GraphError(f"edge {i} needs a nonnegative integer cost")
        built.append(Edge(i, src, dst, cost))
    return Digraph(order, tuple(built), start, bool(directed))


def parse_graph(text: str) -> Digraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed document: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("malformed document: expected an object")
    for key in ("directed", "start", "vertices", "edges"):
        if key not in doc:
            raise GraphError(f"malformed document: missing {key!r}")
    try:
        triples = [(e["src"], e["dst"], e["cost"]) for e in doc["edges"]]
    except (TypeError, KeyError) as exc:
        raise GraphError("malformed document: bad edge record") from exc
    return make_graph(doc["vertices"], triples, doc["start"], bool(doc["directed"]))


def load_graph(path) -> Digraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def double_orient(g: Digraph) -> Digraph:
    """Directed twin of an undirected graph.

    Undirected edge ``k`` becomes edge ``2k-1`` in its listed orientation and
    edge ``2k`` reversed; see :func:`mate` and :func:`undirected_id`.
    """
    if g.directed:
        raise GraphError("graph is already directed")
    edges = []
    for e in g.edges:
        edges.append((e.src, e.dst, e.cost))
        edges.append((e.dst, e.src, e.cost))
    return make_graph(g.vertices, edges, g.start, directed=True)


def mate(eid: int) -> int:
    return eid + 1 if eid % 2 else eid - 1


def undirected_id(eid: int) -> int:
    return (eid + 1) // 2


def copy_id(e: Edge, tail) -> int:
    """Id of the directed copy of undirected ``e`` that leaves ``tail``."""
    return 2 * e.id - 1 if e.src == tail else 2 * e.id


def perturb(g: Digraph) -> dict:
    """Exact scaled costs ``cost * m^(2m) + m^(2m - 2i)`` keyed by edge id."""
    m = g.m
    if m <= 1:
        return {e.id: e.cost for e in g.edges}
    scale = m ** (2 * m)
    return {e.id: e.cost * scale + m ** (2 * m - 2 * e.id) for e in g.edges}


def perturbation_scale(g: Digraph) -> int:
    return g.m ** (2 * g.m) if g.m > 1 else 1


def is_strongly_connected(g: Digraph) -> bool:
    if g.n == 0:
        return True

    def reach(root, step):
        seen = {root}
        todo = [root]
        while todo:
            v = todo.pop()
            for w in step(v):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    root = g.vertices[0]
    if not g.directed:
        return len(reach(root, lambda v: [w for _, w in g.arcs(v)])) == g.n
    fwd = reach(root, lambda v: [e.dst for e in g.out_edges(v)])
    bwd = reach(root, lambda v: [e.src for e in g.in_edges(v)])
    return len(fwd) == g.n and len(bwd) == g.n


@dataclass(frozen=True)
class Walk:
    vertices: tuple
    edges: tuple = ()

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    @property
    def is_cyclic(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)

    def check(self, g: Digraph) -> None:
        if len(self.vertices) != len(self.edges) + 1:
            raise GraphError("walk has mismatched vertex and edge sequences")
        for j, eid in enumerate(self.edges):
            if not 1 <= eid <= g.m:
                raise GraphError(f"walk uses unknown edge {eid}")
            e = g.edge(eid)
            a, b = self.vertices[j], self.vertices[j + 1]
            ok = (e.src, e.dst) == (a, b) or (not g.directed and (e.dst, e.src) == (a, b))
            if not ok:
                raise GraphError(f"step {j} does not follow edge {eid}")

    def base_cost(self, g: Digraph) -> int:
        return sum(g.edge(eid).cost for eid in self.edges)

    def perturbed_cost(self, g: Digraph) -> int:
        p = perturb(g)
        return sum(p[eid] for eid in self.edges)

    def covers(self, g: Digraph) -> bool:
        return set(self.vertices) == set(g.vertices)

    def oriented_edges(self, g: Digraph) -> list:
        """Edge ids of the directed copies used (identity for digraphs)."""
        if g.directed:
            return list(self.edges)
        return [copy_id(g.edge(eid), self.vertices[j]) for j, eid in enumerate(self.edges)]


@dataclass(frozen=True, eq=False)
class TraversalProfile:
    """Traversal counts per directed edge of ``graph``."""

    graph: Digraph
    counts: dict

    def count(self, eid: int) -> int:
        return self.counts.get(eid, 0)

    @property
    def E0(self) -> frozenset:
        return frozenset(e.id for e in self.graph.edges if self.count(e.id) == 0)

    @property
    def E1(self) -> frozenset:
        return frozenset(e.id for e in self.graph.edges if self.count(e.id) == 1)

    @property
    def E_multi(self) -> frozenset:
        return frozenset(e.id for e in self.graph.edges if self.count(e.id) >= 2)

    @property
    def E_used(self) -> frozenset:
        return frozenset(e.id for e in self.graph.edges if self.count(e.id) >= 1)

    def classes(self) -> dict:
        """0, 1 or 2 (for two or more traversals) per edge id."""
        return {e.id: min(self.count(e.id), 2) for e in self.graph.edges}

    def balance(self) -> dict:
        d = {v: 0 for v in self.graph.vertices}
        for e in self.graph.edges:
            c = self.count(e.id)
            d[e.src] += c
            d[e.dst] -= c
        return d

    def traversals(self, v) -> int:
        return sum(self.count(e.id) for e in self.graph.out_edges(v))

    def total(self) -> int:
        return sum(self.counts.values())

    def key(self) -> tuple:
        return tuple(self.count(e.id) for e in self.graph.edges)

    def __eq__(self, other):
        return isinstance(other, TraversalProfile) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def profile_of(walk: Walk, g: Digraph) -> TraversalProfile:
    """Counts of ``walk``; undirected walks are counted on ``double_orient(g)``."""
    walk.check(g)
    target = g if g.directed else double_orient(g)
    counts = {e.id: 0 for e in target.edges}
    for eid in walk.oriented_edges(g):
        counts[eid] += 1
    return TraversalProfile(target, counts)


def undirected_counts(walk: Walk, g: Digraph) -> tuple:
    """Per-edge counts ignoring direction."""
    c = [0] * g.m
    for eid in walk.edges:
        c[eid - 1] += 1
    return tuple(c)

