"""Pure-Python implementations of the hot kernels.

Selected at import when the compiled ``_kernels`` extension is missing, or
when ``NUCLEUS_BACKEND=python`` is set. Every function here has the same
signature and return types as its counterpart in ``_kernels.pyx``; the test
suite runs both and compares outputs.
"""

import heapq
from bisect import bisect_left

import numpy as np

NAME = "python"


def _lists(ptr, idx):
    ptr = np.asarray(ptr).tolist()
    idx = np.asarray(idx).tolist()
    return [idx[ptr[v]:ptr[v + 1]] for v in range(len(ptr) - 1)]


def degeneracy_order(ptr, idx):
    """Smallest-last order; ties go to the smallest vertex id."""
    adj = _lists(ptr, idx)
    n = len(adj)
    deg = [len(a) for a in adj]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order = []
    removal = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        removal.append(d)
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return np.array(order, dtype=np.int32), np.array(removal, dtype=np.int32)


def _iter_cliques(out, r):
    n = len(out)
    if r == 1:
        for u in range(n):
            yield (u,)
        return
    for u in range(n):
        ou = out[u]
        if r == 2:
            for v in ou:
                yield (u, v)
            continue
        ouset = set(ou)
        for v in ou:
            common = [w for w in out[v] if w in ouset]
            if r == 3:
                for w in common:
                    yield (u, v, w)
                continue
            cset = set(common)
            for w in common:
                for x in out[w]:
                    if x in cset:
                        yield (u, v, w, x)


def count_cliques(out_ptr, out_idx, r):
    return sum(1 for _ in _iter_cliques(_lists(out_ptr, out_idx), r))


def enumerate_cliques(out_ptr, out_idx, r):
    rows = [sorted(c) for c in _iter_cliques(_lists(out_ptr, out_idx), r)]
    if not rows:
        return np.empty((0, r), dtype=np.int32)
    return np.array(rows, dtype=np.int32)


def _extensions(adj, adjset, verts, need):
    """Yield every sorted ``need``-tuple of common neighbours forming a clique."""
    base = min(verts, key=lambda v: (len(adj[v]), v))
    rest = [adjset[v] for v in verts if v != base]
    common = [w for w in adj[base] if all(w in s for s in rest)]
    if need == 1:
        for w in common:
            yield (w,)
        return
    cset = set(common)
    for i, x in enumerate(common):
        cx = [y for y in adj[x] if y > x and y in cset]
        if need == 2:
            for y in cx:
                yield (x, y)
            continue
        cxset = set(cx)
        for y in cx:
            for z in adj[y]:
                if z > y and z in cxset:
                    yield (x, y, z)


def extend_clique(adj_ptr, adj_idx, verts, s):
    adj = _lists(adj_ptr, adj_idx)
    adjset = [set(a) for a in adj]
    verts = [int(v) for v in verts]
    rows = [sorted(verts + list(e)) for e in _extensions(adj, adjset, verts, s - len(verts))]
    if not rows:
        return np.empty((0, s), dtype=np.int32)
    return np.array(rows, dtype=np.int32)


class _Lookup:
    """Maps a sorted vertex tuple of length 1..3 to its clique index."""

    def __init__(self, edge_off, edge_last, tri_off, tri_last):
        self.edge_off = np.asarray(edge_off).tolist()
        self.edge_last = np.asarray(edge_last).tolist()
        self.tri_off = np.asarray(tri_off).tolist()
        self.tri_last = np.asarray(tri_last).tolist()

    def edge(self, a, b):
        lo, hi = self.edge_off[a], self.edge_off[a + 1]
        i = bisect_left(self.edge_last, b, lo, hi)
        if i == hi or self.edge_last[i] != b:
            raise KeyError((a, b))
        return i

    def find(self, t):
        if len(t) == 1:
            return t[0]
        e = self.edge(t[0], t[1])
        if len(t) == 2:
            return e
        lo, hi = self.tri_off[e], self.tri_off[e + 1]
        i = bisect_left(self.tri_last, t[2], lo, hi)
        if i == hi or self.tri_last[i] != t[2]:
            raise KeyError(tuple(t))
        return i


class OnDemandLinks:
    """K_s containing a K_r are discovered from adjacency each time they are asked for."""

    def __init__(self, adj_ptr, adj_idx, cliques, s, patterns, edge_off, edge_last, tri_off, tri_last):
        self.adj = _lists(adj_ptr, adj_idx)
        self.adjset = [set(a) for a in self.adj]
        self.cliques = [tuple(row) for row in np.asarray(cliques).tolist()]
        self.r = np.asarray(cliques).shape[1]
        self.s = s
        self.patterns = [tuple(p) for p in np.asarray(patterns).tolist()]
        self.lookup = _Lookup(edge_off, edge_last, tri_off, tri_last)

    def groups(self, R):
        verts = self.cliques[R]
        find = self.lookup.find
        out = []
        for ext in _extensions(self.adj, self.adjset, verts, self.s - self.r):
            S = sorted(verts + ext)
            members = []
            for p in self.patterns:
                t = tuple(S[j] for j in p)
                if t != verts:
                    members.append(find(t))
            out.append(members)
        return out

    def degree(self, R):
        return sum(1 for _ in _extensions(self.adj, self.adjset, self.cliques[R], self.s - self.r))

    def others(self, R):
        g = self.groups(R)
        return np.array(g, dtype=np.int32).reshape(len(g), len(self.patterns) - 1)


class MaterializedLinks:
    """K_s stored explicitly as rows of member K_r indices."""

    def __init__(self, links, c):
        links = np.asarray(links, dtype=np.int32)
        self.width = links.shape[1] - 1
        self.links = links.tolist()
        inc = [[] for _ in range(c)]
        for li, row in enumerate(self.links):
            for x in row:
                inc[x].append(li)
        self.inc = inc

    def groups(self, R):
        return [[x for x in self.links[li] if x != R] for li in self.inc[R]]

    def degree(self, R):
        return len(self.inc[R])

    def others(self, R):
        g = self.groups(R)
        return np.array(g, dtype=np.int32).reshape(len(g), self.width)


def peel(src, c, priority):
    """Bucketed min-δ peeling. Returns (kappa, order, initial degree)."""
    priority = np.asarray(priority).tolist()
    delta = [src.degree(R) for R in range(c)]
    init = list(delta)
    maxd = max(delta, default=0)
    counts = [0] * (maxd + 2)
    for d in delta:
        counts[d] += 1
    bin_start = [0] * (maxd + 2)
    acc = 0
    for d in range(maxd + 2):
        bin_start[d] = acc
        acc += counts[d]
    fill = list(bin_start)
    vert = [0] * c
    pos = [0] * c
    for R in range(c):
        p = fill[delta[R]]
        vert[p] = R
        pos[R] = p
        fill[delta[R]] += 1

    processed = [False] * c
    kappa = [0] * c
    order = []
    heap = []
    i = 0
    while len(order) < c:
        if not heap:
            k = delta[vert[i]]
            end = bin_start[k + 1]
            heap = [(priority[vert[p]], vert[p]) for p in range(i, end)]
            heapq.heapify(heap)
            i = end
        _, R = heapq.heappop(heap)
        k = delta[R]
        kappa[R] = k
        order.append(R)
        for members in src.groups(R):
            if any(processed[x] for x in members):
                continue
            for x in members:
                d = delta[x]
                if d > k:
                    q = bin_start[d]
                    w = vert[q]
                    p = pos[x]
                    vert[p] = w
                    pos[w] = p
                    vert[q] = x
                    pos[x] = q
                    bin_start[d] += 1
                    delta[x] = d - 1
                    if d - 1 == k:
                        heapq.heappush(heap, (priority[x], x))
                        i = bin_start[k + 1]
        processed[R] = True
    return (
        np.array(kappa, dtype=np.int32),
        np.array(order, dtype=np.int32),
        np.array(init, dtype=np.int32),
    )


def forest(src, kappa, order):
    """Highest-k-first union-find sweep. Returns (node_k, node_parent, node_of)."""
    kappa = np.asarray(kappa).tolist()
    order = np.asarray(order).tolist()
    c = len(kappa)
    parent = [-1] * c
    size = [0] * c
    top = [-1] * c
    stamp = [-1] * c
    made = [-1] * c
    head = [-1] * c
    tail = [-1] * c
    node_k = []
    node_parent = []
    next_sib = []
    node_of = [-1] * c

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def pending(root, k):
        if stamp[root] != k:
            stamp[root] = k
            t = top[root]
            head[root] = tail[root] = t
            if t >= 0:
                next_sib[t] = -1

    def union(x, y, k):
        x = find(x)
        y = find(y)
        if x == y:
            return
        pending(x, k)
        pending(y, k)
        if size[x] < size[y] or (size[x] == size[y] and y < x):
            x, y = y, x
        parent[y] = x
        size[x] += size[y]
        if head[y] >= 0:
            if head[x] >= 0:
                next_sib[tail[x]] = head[y]
                tail[x] = tail[y]
            else:
                head[x] = head[y]
                tail[x] = tail[y]

    end = c
    while end > 0:
        k = kappa[order[end - 1]]
        if k == 0:
            break
        start = end - 1
        while start > 0 and kappa[order[start - 1]] == k:
            start -= 1
        block = order[start:end]
        for R in block:
            parent[R] = R
            size[R] = 1
        for R in block:
            for members in src.groups(R):
                if all(parent[x] >= 0 for x in members):
                    for x in members:
                        union(R, x, k)
        for R in block:
            root = find(R)
            if made[root] != k:
                made[root] = k
                pending(root, k)
                nid = len(node_k)
                node_k.append(k)
                node_parent.append(-1)
                next_sib.append(-1)
                ch = head[root]
                while ch >= 0:
                    node_parent[ch] = nid
                    ch = next_sib[ch]
                top[root] = nid
            node_of[R] = top[root]
        end = start
    return (
        np.array(node_k, dtype=np.int32),
        np.array(node_parent, dtype=np.int32),
        np.array(node_of, dtype=np.int32),
    )


def count_internal_edges(adj_ptr, adj_idx, verts, mark):
    """Edges with both endpoints in ``verts``. ``mark`` is scratch space, left all-zero."""
    verts = np.asarray(verts)
    mark[verts] = 1
    total = 0
    for v in verts.tolist():
        total += int(mark[adj_idx[adj_ptr[v]:adj_ptr[v + 1]]].sum())
    mark[verts] = 0
    return total // 2
