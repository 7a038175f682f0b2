import numpy as np
from numba import njit

INF = np.iinfo(np.int64).max


@njit(cache=True)
def _relax_better(base, vec, s, edge, cost, t):
    if base[t] == INF:
        return True
    nb = base[s] + cost
    if nb != base[t]:
        return nb < base[t]
    for i in range(vec.shape[1]):
        a = vec[s, i] + (1 if i == edge else 0)
        b = vec[t, i]
        if a != b:
            return a < b
    return False


@njit(cache=True)
def _less(base, vec, s, t):
    if base[s] != base[t]:
        return base[s] < base[t]
    for i in range(vec.shape[1]):
        if vec[s, i] != vec[t, i]:
            return vec[s, i] < vec[t, i]
    return False


@njit(cache=True)
def layered_search(n, m, start, adj_ptr, arc_dst, arc_edge, arc_cost):
    """Least-cost labels over (vertex, visited-mask) states.

    A label is the base cost followed by the per-edge traversal counts, compared
    lexicographically; edge 0 is the most significant digit. Masks are settled
    in increasing order, each layer with a Dijkstra pass over its vertices.
    """
    nstates = (1 << n) * n
    base = np.full(nstates, INF, np.int64)
    vec = np.zeros((nstates, m), np.int16)
    pred = np.full(nstates, -1, np.int64)
    parc = np.full(nstates, -1, np.int64)
    done = np.zeros(n, np.bool_)
    base[(1 << start) * n + start] = 0
    for mask in range(1 << n):
        if (mask >> start) & 1 == 0:
            continue
        done[:] = False
        for _ in range(n):
            best = -1
            for v in range(n):
                if done[v] or (mask >> v) & 1 == 0:
                    continue
                s = mask * n + v
                if base[s] == INF:
                    continue
                if best == -1 or _less(base, vec, s, mask * n + best):
                    best = v
            if best == -1:
                break
            done[best] = True
            s = mask * n + best
            for a in range(adj_ptr[best], adj_ptr[best + 1]):
                w = arc_dst[a]
                nm = mask | (1 << w)
                if nm == mask and done[w]:
                    continue
                t = nm * n + w
                if _relax_better(base, vec, s, arc_edge[a], arc_cost[a], t):
                    base[t] = base[s] + arc_cost[a]
                    vec[t, :] = vec[s, :]
                    vec[t, arc_edge[a]] += 1
                    pred[t] = s
                    parc[t] = a
    return base, vec, pred, parc
