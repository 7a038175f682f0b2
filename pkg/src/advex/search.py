"""Exact least-cost exploration search over (vertex, visited-set) states.

The compiled kernel is used unless ``ADVEX_NO_NUMBA`` is set to a non-empty
value other than ``0``; the fallback evaluates the same sweep on exact
integers.
"""

from __future__ import annotations

import os

import numpy as np

from .graph import Digraph, Walk, perturb

MAX_EXACT_N = 16

try:
    from . import _search_nb
except ImportError:  # pragma: no cover - numba missing
    _search_nb = None

from . import _search_py


class SearchError(ValueError):
    pass


def numba_enabled() -> bool:
    flag = os.environ.get("ADVEX_NO_NUMBA", "")
    return _search_nb is not None and flag in ("", "0")


def _arcs(g: Digraph):
    ptr = [0]
    dst, edge, cost = [], [], []
    for v in g.vertices:
        for e, w in sorted(g.arcs(v), key=lambda a: a[0].id):
            dst.append(g.index[w])
            edge.append(e.id - 1)
            cost.append(e.cost)
        ptr.append(len(dst))
    return (
        np.asarray(ptr, np.int64),
        np.asarray(dst, np.int64),
        np.asarray(edge, np.int64),
        np.asarray(cost, np.int64),
    )


def _goal(n, start, cyclic, better):
    full = (1 << n) - 1
    if cyclic:
        return full * n + start
    best = None
    for v in range(n):
        s = full * n + v
        if best is None or better(s, best):
            best = s
    return best


def _walk(g, pred, parc, goal, arc_edge):
    n = g.n
    verts, edges = [], []
    s = goal
    while s >= 0:
        verts.append(g.vertices[s % n])
        if parc[s] >= 0:
            edges.append(int(arc_edge[parc[s]]) + 1)
        s = int(pred[s])
    return Walk(tuple(reversed(verts)), tuple(reversed(edges)))


def _search_compiled(g, cyclic, ptr, dst, edge, cost):
    start = g.index[g.start]
    base, vec, pred, parc = _search_nb.layered_search(g.n, g.m, start, ptr, dst, edge, cost)
    inf = np.iinfo(np.int64).max

    def better(s, t):
        if base[s] == inf:
            return False
        if base[t] == inf:
            return True
        return (base[s], tuple(vec[s])) < (base[t], tuple(vec[t]))

    goal = _goal(g.n, start, cyclic, better)
    if base[goal] == inf:
        return None
    # The lexicographic order agrees with the scaled integer order as soon as
    # every count of the winner is a valid base-m^2 digit.
    if g.m < 2 or int(vec[goal].max()) >= g.m * g.m:
        return False
    return _walk(g, pred, parc, goal, edge)


def _search_exact(g, cyclic, ptr, dst, edge):
    start = g.index[g.start]
    p = perturb(g)
    weights = [p[int(e) + 1] for e in edge]
    label, pred, parc = _search_py.layered_search(g.n, start, ptr, dst, weights)

    def better(s, t):
        if label[s] is None:
            return False
        return label[t] is None or label[s] < label[t]

    goal = _goal(g.n, start, cyclic, better)
    if label[goal] is None:
        return None
    return _walk(g, pred, parc, goal, edge)


def optimal_walk(g: Digraph, closure: str = "cyclic", limit: int = MAX_EXACT_N,
                 backend: str | None = None) -> Walk:
    """Minimum perturbed-cost exploration sequence from ``g.start``."""
    if closure not in ("cyclic", "path"):
        raise SearchError(f"unknown closure {closure!r}")
    if g.n > limit:
        raise SearchError(f"n={g.n} exceeds the exact-search limit {limit}")
    cyclic = closure == "cyclic"
    if g.n == 1:
        return Walk((g.start,), ())
    ptr, dst, edge, cost = _arcs(g)
    if backend is None:
        backend = "numba" if numba_enabled() else "python"
    walk = None
    if backend == "numba":
        walk = _search_compiled(g, cyclic, ptr, dst, edge, cost)
    if walk is False or backend != "numba":
        walk = _search_exact(g, cyclic, ptr, dst, edge)
    if walk is None:
        raise SearchError("no exploration sequence exists (graph not connected appropriately)")
    return walk
