"""Fog-of-war environment: the explorer only ever sees where it stands."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Digraph, Walk


class VisibilityError(RuntimeError):
    pass


@dataclass(frozen=True)
class Observation:
    """What is visible at ``at``.

    Directed graphs expose ``(edge id, head, cost)`` for out-edges only.
    Undirected graphs expose ``(edge id, other end, cost, listed_from_here)``
    for every incident edge.
    """

    at: object
    edges: tuple
    first_visit: bool


class Environment:
    def __init__(self, g: Digraph, known: bool = False):
        self._g = g
        self._known = known
        self.directed = g.directed
        self.n = g.n
        self.start = g.start
        self.at = g.start
        self._visited = {g.start}
        self._fresh = True
        self._verts = [g.start]
        self._edges = []

    def observe(self) -> Observation:
        v = self.at
        if self.directed:
            edges = tuple((e.id, e.dst, e.cost) for e in self._g.out_edges(v))
        else:
            edges = tuple(
                (e.id, e.dst if e.src == v else e.src, e.cost, e.src == v)
                for e in self._g.incident(v)
            )
        return Observation(v, edges, self._fresh)

    def move(self, eid: int):
        v = self.at
        if not 1 <= eid <= self._g.m:
            raise VisibilityError(f"edge {eid} does not exist")
        e = self._g.edge(eid)
        if e.src == v:
            w = e.dst
        elif not self.directed and e.dst == v:
            w = e.src
        else:
            raise VisibilityError(f"edge {eid} is not visible from {v!r}")
        self._verts.append(w)
        self._edges.append(eid)
        self._fresh = w not in self._visited
        self._visited.add(w)
        self.at = w
        return w

    def full_graph(self) -> Digraph:
        if not self._known:
            raise VisibilityError("graph structure is hidden in this variant")
        return self._g

    def walk(self) -> Walk:
        return Walk(tuple(self._verts), tuple(self._edges))
