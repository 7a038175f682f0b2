import numpy as np


def layered_search(n, start, adj_ptr, arc_dst, arc_weight):
    """Same sweep as the compiled kernel, on exact integer arc weights.

    ``arc_weight`` holds Python ints (the scaled perturbed costs), so labels
    are compared exactly. Returns ``(label, pred, parc)`` with ``None`` for
    unreached states.
    """
    nstates = (1 << n) * n
    label = [None] * nstates
    pred = np.full(nstates, -1, np.int64)
    parc = np.full(nstates, -1, np.int64)
    label[(1 << start) * n + start] = 0
    for mask in range(1 << n):
        if not (mask >> start) & 1:
            continue
        done = [False] * n
        row = mask * n
        for _ in range(n):
            best = -1
            for v in range(n):
                if done[v] or not (mask >> v) & 1:
                    continue
                lab = label[row + v]
                if lab is not None and (best == -1 or lab < label[row + best]):
                    best = v
            if best == -1:
                break
            done[best] = True
            s = row + best
            for a in range(adj_ptr[best], adj_ptr[best + 1]):
                w = int(arc_dst[a])
                nm = mask | (1 << w)
                if nm == mask and done[w]:
                    continue
                t = nm * n + w
                cand = label[s] + arc_weight[a]
                if label[t] is None or cand < label[t]:
                    label[t] = cand
                    pred[t] = s
                    parc[t] = a
    return label, pred, parc
