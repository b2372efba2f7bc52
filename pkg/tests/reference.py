"""Textbook peelers used as independent references.

Plain dict/set code with no imports from the package beyond Graph.
"""

import heapq
from itertools import combinations


def adjacency(g):
    return [set(g.neighbors(v).tolist()) for v in range(g.n)]


def core_numbers(g):
    """Matula-Beck: repeatedly remove a minimum-degree vertex."""
    adj = adjacency(g)
    deg = [len(a) for a in adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    core = [0] * g.n
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        k = max(k, d)
        core[v] = k
        removed[v] = True
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return core


def truss_numbers(g):
    """Per-edge peeling by triangle support; returns {(u, v): number} with u < v."""
    adj = adjacency(g)
    sup = {}
    for u in range(g.n):
        for v in adj[u]:
            if u < v:
                sup[u, v] = len(adj[u] & adj[v])
    heap = [(c, e) for e, c in sup.items()]
    heapq.heapify(heap)
    out = {}
    k = 0
    while heap:
        c, (u, v) = heapq.heappop(heap)
        if (u, v) in out or c != sup[u, v]:
            continue
        k = max(k, c)
        out[u, v] = k
        adj[u].discard(v)
        adj[v].discard(u)
        for w in adj[u] & adj[v]:
            for e in (tuple(sorted((u, w))), tuple(sorted((v, w)))):
                sup[e] -= 1
                heapq.heappush(heap, (sup[e], e))
    return out


def triangles(g):
    adj = adjacency(g)
    return sorted(t for t in combinations(range(g.n), 3) if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]])


def degeneracy(g):
    return max(core_numbers(g), default=0)
