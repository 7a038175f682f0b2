"""Hierholzer's algorithm on a multigraph given with edge multiplicities."""

from __future__ import annotations


class EulerError(ValueError):
    pass


def euler_walk(start, arcs) -> list:
    """Edge keys of an Euler trail from ``start``.

    ``arcs`` is an iterable of ``(edge_key, tail, head, count)``. At every
    vertex the trail tries edges by smallest head first, then edge key. Works
    for circuits and for trails whose imbalance starts at ``start``.
    """
    out = {}
    total = 0
    for key, tail, head, count in arcs:
        if count <= 0:
            continue
        out.setdefault(tail, []).extend([(head, key)] * count)
        out.setdefault(head, [])
        total += count
    for v in out:
        out[v].sort(key=lambda a: (a[0], a[1]))
    out.setdefault(start, [])
    ptr = {v: 0 for v in out}
    stack = [(start, None)]
    trail = []
    while stack:
        v, key = stack[-1]
        if ptr[v] < len(out[v]):
            w, k = out[v][ptr[v]]
            ptr[v] += 1
            stack.append((w, k))
        else:
            stack.pop()
            trail.append(key)
    trail.reverse()
    trail = trail[1:]
    if len(trail) != total:
        raise EulerError("multigraph has no Euler trail from the start")
    return trail
