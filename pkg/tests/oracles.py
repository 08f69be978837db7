"""Independent reference implementations used to check the library.

Everything here is written for clarity over speed and deliberately
avoids the library's own algorithms: distances are brute-forced over
the nine torus images, betweenness is obtained by literally
enumerating shortest paths, and sums use math.fsum so the references
are correctly rounded.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations


def torus_distance_images(ax, ay, bx, by, width, height):
    """Shortest distance by trying all nine wrap images of b."""
    best = math.inf
    for ix in (-1, 0, 1):
        for iy in (-1, 0, 1):
            d = math.hypot(ax - (bx + ix * width), ay - (by + iy * height))
            best = min(best, d)
    return best


def gini_pairwise(values):
    """Mean absolute difference over twice the mean, via fsum."""
    xs = [float(v) for v in values]
    n = len(xs)
    total = math.fsum(xs)
    if n <= 1 or total == 0.0:
        return 0.0
    diff = math.fsum(abs(a - b) for a in xs for b in xs)
    return diff / (2.0 * n * total)


def adjacency_sets(n, edges):
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def bfs_distances(adj, src, alive):
    """Hop counts from src over alive vertices only."""
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if alive[v] and v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def all_shortest_paths(adj, src, dst, alive):
    """Every shortest src-dst path as a tuple of vertices."""
    dist = bfs_distances(adj, src, alive)
    if dst not in dist:
        return []
    paths = []

    def extend(path):
        u = path[-1]
        if u == dst:
            paths.append(tuple(path))
            return
        for v in sorted(adj[u]):
            if alive[v] and dist.get(v) == dist[u] + 1:
                path.append(v)
                extend(path)
                path.pop()

    extend([src])
    return paths


def betweenness_by_enumeration(n, edges, alive):
    """Normalized betweenness by counting every shortest path.

    Ordered (s, t) pairs are accumulated and divided by
    (n_alive - 1) * (n_alive - 2), giving values in [0, 1].
    """
    adj = adjacency_sets(n, edges)
    live = [v for v in range(n) if alive[v]]
    raw = {v: 0.0 for v in range(n)}
    for s in live:
        for t in live:
            if s == t:
                continue
            paths = all_shortest_paths(adj, s, t, alive)
            if not paths:
                continue
            sigma = len(paths)
            for v in live:
                if v == s or v == t:
                    continue
                through = sum(1 for p in paths if v in p[1:-1])
                if through:
                    raw[v] += through / sigma
    denom = (len(live) - 1) * (len(live) - 2)
    if denom <= 0:
        return {v: 0.0 for v in range(n)}
    return {v: raw[v] / denom for v in range(n)}


def tree_betweenness_closed_form(n, edges):
    """Betweenness on a tree from branch sizes around each vertex.

    Removing v splits the tree into branches of sizes b_1..b_k; the
    ordered pairs routed through v number (n-1)^2 - sum(b_i^2).
    """
    adj = adjacency_sets(n, edges)

    def branch_size(root, banned):
        seen = {banned, root}
        queue = deque([root])
        size = 1
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
                    size += 1
        return size

    denom = (n - 1) * (n - 2)
    out = {}
    for v in range(n):
        sizes = [branch_size(u, v) for u in adj[v]]
        raw = (n - 1) ** 2 - sum(s * s for s in sizes)
        out[v] = raw / denom if denom > 0 else 0.0
    return out


def random_tree_edges(n, rng):
    """Uniform random labeled tree decoded from a Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [int(rng.integers(0, n)) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    for v in seq:
        leaf = leaves.pop(0)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            import bisect

            bisect.insort(leaves, v)
    a, b = leaves
    edges.append((a, b))
    return edges


def components_naive(n, edges, alive):
    """List of sorted alive components, ignoring edges at dead vertices."""
    adj = adjacency_sets(n, edges)
    seen = set()
    comps = []
    for s in range(n):
        if not alive[s] or s in seen:
            continue
        comp = []
        queue = deque([s])
        seen.add(s)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in adj[u]:
                if alive[v] and v not in seen:
                    seen.add(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def random_graph_edges(n, p, rng):
    """Bernoulli(p) edge set over all vertex pairs."""
    return [(a, b) for a, b in combinations(range(n), 2) if rng.random() < p]
