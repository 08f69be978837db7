"""Compiled graph kernels.

Both kernels walk the padded adjacency arrays of `LinkGraph` directly
(`nbr` rows hold sorted neighbor ids, `deg` the row lengths) and treat
dead phones as absent. Compiled once per process and cached on disk.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def udg_mask(pos, width, height, r2, out):
    """Symmetric bool matrix of pairs within squared torus distance r2."""
    n = pos.shape[0]
    for i in range(n):
        out[i, i] = False
        xi = pos[i, 0]
        yi = pos[i, 1]
        for j in range(i + 1, n):
            dx = abs(xi - pos[j, 0])
            if width - dx < dx:
                dx = width - dx
            dy = abs(yi - pos[j, 1])
            if height - dy < dy:
                dy = height - dy
            hit = dx * dx + dy * dy <= r2
            out[i, j] = hit
            out[j, i] = hit


@njit(cache=True)
def fill_adjacency(mask, nbr, deg):
    """Rewrite padded adjacency rows from a bool matrix.

    Rows are padded with -1 up to capacity. Returns -1 if any row
    exceeds the capacity of nbr (nothing useful was written), else 0.
    """
    n = mask.shape[0]
    cap = nbr.shape[1]
    for i in range(n):
        d = 0
        for j in range(n):
            if mask[i, j]:
                if d == cap:
                    return -1
                nbr[i, d] = j
                d += 1
        for k in range(d, cap):
            nbr[i, k] = -1
        deg[i] = d
    return 0


@njit(cache=True)
def mask_from_adjacency(nbr, deg, out):
    """Inverse of fill_adjacency: bool matrix from padded rows."""
    n = deg.shape[0]
    for i in range(n):
        for j in range(n):
            out[i, j] = False
        for k in range(deg[i]):
            out[i, nbr[i, k]] = True


@njit(cache=True)
def bfs_route(nbr, deg, alive, src, dst, pred, dist, queue):
    """Shortest hop path search from src toward dst over alive phones.

    Fills pred/dist as far as the search got and returns True when dst
    was reached. Neighbor rows are sorted ascending, so ties between
    equal-length paths always resolve toward lower phone ids and the
    returned tree is deterministic.
    """
    n = deg.shape[0]
    for i in range(n):
        pred[i] = -1
        dist[i] = -1
    if not alive[src] or not alive[dst]:
        return False
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        if v == dst:
            return True
        dv = dist[v]
        for k in range(deg[v]):
            w = nbr[v, k]
            if alive[w] and dist[w] < 0:
                dist[w] = dv + 1
                pred[w] = v
                queue[tail] = w
                tail += 1
    return dist[dst] >= 0


@njit(cache=True)
def brandes_betweenness(nbr, deg, alive):
    """Raw betweenness over alive phones, ordered-pair convention.

    Returns, for each phone v, the sum over ordered alive pairs (s, t),
    s != v != t, of the fraction of shortest s-t paths through v. Dead
    phones are skipped entirely and score zero. Callers normalize by
    (n_alive - 1) * (n_alive - 2).
    """
    n = deg.shape[0]
    bc = np.zeros(n)
    cap = nbr.shape[1]
    preds = np.empty((n, cap), np.int32)
    n_pred = np.empty(n, np.int32)
    sigma = np.empty(n)
    dist = np.empty(n, np.int32)
    delta = np.empty(n)
    order = np.empty(n, np.int32)
    for s in range(n):
        if not alive[s]:
            continue
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            n_pred[i] = 0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        count = 1
        while head < count:
            v = order[head]
            head += 1
            dv = dist[v]
            sv = sigma[v]
            for k in range(deg[v]):
                w = nbr[v, k]
                if not alive[w]:
                    continue
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[count] = w
                    count += 1
                if dist[w] == dv + 1:
                    sigma[w] += sv
                    preds[w, n_pred[w]] = v
                    n_pred[w] += 1
        for i in range(count - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for k in range(n_pred[w]):
                v = preds[w, k]
                delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    return bc
