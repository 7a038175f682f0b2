"""Recovering traversal counts of multi-edges from balance alone."""

from __future__ import annotations


class CountsError(ValueError):
    pass


def balance_resolve(v, known_in: int, known_out: int, outgoing: bool, target: int = 0) -> int:
    """Count of the single unknown edge at ``v`` forced by ``out - in == target``."""
    if outgoing:
        count = target + known_in - known_out
    else:
        count = known_out - known_in - target
    if count <= 0:
        raise CountsError(f"balance at {v!r} forces {count} traversals")
    return count


def solve_counts(vertices, E0, E1, E_multi, imbalance=None, order=None) -> dict:
    """Counts for every edge given the three classes.

    Edges are ``(id, src, dst)`` triples. ``imbalance`` maps a vertex to the
    required ``out - in`` (default zero). Leaves of the forest formed by the
    unresolved multi-edges are peeled smallest id first unless ``order`` (a
    callable picking one leaf from a sorted list) says otherwise.
    """
    imbalance = imbalance or {}
    counts = {}
    for eid, _, _ in E0:
        counts[eid] = 0
    for eid, _, _ in E1:
        counts[eid] = 1
    multi = {eid: (s, d) for eid, s, d in E_multi}
    known_in = {v: 0 for v in vertices}
    known_out = {v: 0 for v in vertices}
    for eid, s, d in E1:
        known_out[s] += 1
        known_in[d] += 1
    touching = {v: set() for v in vertices}
    for eid, (s, d) in multi.items():
        touching[s].add(eid)
        touching[d].add(eid)

    while multi:
        leaves = sorted(v for v in vertices if len(touching[v]) == 1)
        if not leaves:
            raise CountsError("multi-edges contain an undirected cycle")
        v = order(leaves) if order else leaves[0]
        (eid,) = touching[v]
        s, d = multi.pop(eid)
        c = balance_resolve(v, known_in[v], known_out[v], s == v, imbalance.get(v, 0))
        if c < 2:
            raise CountsError(f"multi-edge {eid} resolved to {c}")
        counts[eid] = c
        known_out[s] += c
        known_in[d] += c
        touching[s].discard(eid)
        touching[d].discard(eid)

    for v in vertices:
        if known_out[v] - known_in[v] != imbalance.get(v, 0):
            raise CountsError(f"classification leaves {v!r} unbalanced")
    return counts
