# distutils: language = c++
"""Compiled kernels: clique enumeration, δ-peeling and the forest sweep.

Mirrors ``_pykernels`` function by function. Arrays crossing the boundary are
int64 CSR offsets and int32 ids.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t
from libcpp.queue cimport priority_queue
from libcpp.vector cimport vector

NAME = "cython"


cdef inline int64_t _search(const int32_t[::1] arr, int64_t lo, int64_t hi, int32_t x) noexcept nogil:
    # lower bound of x in arr[lo:hi]
    cdef int64_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline bint _adjacent(const int64_t[::1] ptr, const int32_t[::1] idx, int32_t u, int32_t w) noexcept nogil:
    cdef int64_t hi = ptr[u + 1]
    cdef int64_t i = _search(idx, ptr[u], hi, w)
    return i < hi and idx[i] == w


def degeneracy_order(const int64_t[::1] ptr, const int32_t[::1] idx):
    cdef int64_t n = ptr.shape[0] - 1
    cdef vector[int64_t] deg
    cdef vector[uint8_t] removed
    cdef priority_queue[int64_t] heap
    cdef int64_t v, w, d, key, j
    cdef int64_t t = 0
    order = np.empty(n, dtype=np.int32)
    removal = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] order_v = order
    cdef int32_t[::1] removal_v = removal
    deg.resize(n)
    removed.resize(n, 0)
    with nogil:
        for v in range(n):
            deg[v] = ptr[v + 1] - ptr[v]
            heap.push(-(deg[v] * n + v))
        while not heap.empty():
            key = -heap.top()
            heap.pop()
            d = key // n
            v = key - d * n
            if removed[v] or d != deg[v]:
                continue
            removed[v] = 1
            order_v[t] = <int32_t>v
            removal_v[t] = <int32_t>d
            t += 1
            for j in range(ptr[v], ptr[v + 1]):
                w = idx[j]
                if not removed[w]:
                    deg[w] -= 1
                    heap.push(-(deg[w] * n + w))
    return order, removal


cdef inline void _sort_small(int32_t* a, int k) noexcept nogil:
    cdef int i, j
    cdef int32_t x
    for i in range(1, k):
        x = a[i]
        j = i - 1
        while j >= 0 and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


cdef int64_t _cliques(const int64_t[::1] ptr, const int32_t[::1] idx, int r, int32_t[:, ::1] out) noexcept nogil:
    cdef int64_t n = ptr.shape[0] - 1
    cdef int64_t u, i, j, a, b, cnt = 0
    cdef int32_t v, w, x
    cdef int32_t row[4]
    cdef bint emit = out.shape[0] > 0
    cdef vector[int64_t] mark
    cdef vector[int64_t] mark2
    cdef vector[int32_t] common
    cdef int64_t stamp2 = 0
    if r == 1:
        if emit:
            for u in range(n):
                out[u, 0] = <int32_t>u
        return n
    mark.resize(n, -1)
    mark2.resize(n, -1)
    for u in range(n):
        if r == 2:
            for i in range(ptr[u], ptr[u + 1]):
                if emit:
                    row[0] = <int32_t>u
                    row[1] = idx[i]
                    _sort_small(row, 2)
                    out[cnt, 0] = row[0]
                    out[cnt, 1] = row[1]
                cnt += 1
            continue
        for i in range(ptr[u], ptr[u + 1]):
            mark[idx[i]] = u
        for i in range(ptr[u], ptr[u + 1]):
            v = idx[i]
            common.clear()
            for j in range(ptr[v], ptr[v + 1]):
                w = idx[j]
                if mark[w] == u:
                    common.push_back(w)
            if r == 3:
                for a in range(<int64_t>common.size()):
                    if emit:
                        row[0] = <int32_t>u
                        row[1] = v
                        row[2] = common[a]
                        _sort_small(row, 3)
                        out[cnt, 0] = row[0]
                        out[cnt, 1] = row[1]
                        out[cnt, 2] = row[2]
                    cnt += 1
                continue
            stamp2 += 1
            for a in range(<int64_t>common.size()):
                mark2[common[a]] = stamp2
            for a in range(<int64_t>common.size()):
                w = common[a]
                for j in range(ptr[w], ptr[w + 1]):
                    x = idx[j]
                    if mark2[x] == stamp2:
                        if emit:
                            row[0] = <int32_t>u
                            row[1] = v
                            row[2] = w
                            row[3] = x
                            _sort_small(row, 4)
                            for b in range(4):
                                out[cnt, b] = row[b]
                        cnt += 1
    return cnt


def count_cliques(const int64_t[::1] out_ptr, const int32_t[::1] out_idx, int r):
    cdef int32_t[:, ::1] empty = np.empty((0, r), dtype=np.int32)
    cdef int64_t c
    with nogil:
        c = _cliques(out_ptr, out_idx, r, empty)
    return c


def enumerate_cliques(const int64_t[::1] out_ptr, const int32_t[::1] out_idx, int r):
    cdef int64_t c = count_cliques(out_ptr, out_idx, r)
    out = np.empty((c, r), dtype=np.int32)
    cdef int32_t[:, ::1] view = out
    if c:
        with nogil:
            _cliques(out_ptr, out_idx, r, view)
    return out


cdef class _Scratch:
    """Per-object scratch buffers for extension enumeration."""
    cdef vector[int32_t] common
    cdef vector[int32_t] cx
    cdef vector[int64_t] mark
    cdef vector[int64_t] mark2
    cdef int64_t stamp
    cdef int64_t stamp2

    def __cinit__(self, int64_t n):
        self.mark.resize(n, 0)
        self.mark2.resize(n, 0)
        self.stamp = 0
        self.stamp2 = 0


cdef void _extensions(const int64_t[::1] ptr, const int32_t[::1] idx, const int32_t* verts, int r, int need,
                      _Scratch sc, vector[int32_t]& out) noexcept:
    """Append each sorted need-tuple of pairwise-adjacent common neighbours of verts to out."""
    cdef int i, base = 0
    cdef int64_t j, a, b, bestdeg, dg
    cdef int32_t w, x, y, z
    cdef bint ok
    bestdeg = ptr[verts[0] + 1] - ptr[verts[0]]
    for i in range(1, r):
        dg = ptr[verts[i] + 1] - ptr[verts[i]]
        if dg < bestdeg:
            bestdeg = dg
            base = i
    sc.common.clear()
    for j in range(ptr[verts[base]], ptr[verts[base] + 1]):
        w = idx[j]
        ok = True
        for i in range(r):
            if i != base and not _adjacent(ptr, idx, verts[i], w):
                ok = False
                break
        if ok:
            sc.common.push_back(w)
    if need == 1:
        for a in range(<int64_t>sc.common.size()):
            out.push_back(sc.common[a])
        return
    sc.stamp += 1
    for a in range(<int64_t>sc.common.size()):
        sc.mark[sc.common[a]] = sc.stamp
    for a in range(<int64_t>sc.common.size()):
        x = sc.common[a]
        sc.cx.clear()
        for j in range(_search(idx, ptr[x], ptr[x + 1], x + 1), ptr[x + 1]):
            y = idx[j]
            if sc.mark[y] == sc.stamp:
                sc.cx.push_back(y)
        if need == 2:
            for b in range(<int64_t>sc.cx.size()):
                out.push_back(x)
                out.push_back(sc.cx[b])
            continue
        sc.stamp2 += 1
        for b in range(<int64_t>sc.cx.size()):
            sc.mark2[sc.cx[b]] = sc.stamp2
        for b in range(<int64_t>sc.cx.size()):
            y = sc.cx[b]
            for j in range(_search(idx, ptr[y], ptr[y + 1], y + 1), ptr[y + 1]):
                z = idx[j]
                if sc.mark2[z] == sc.stamp2:
                    out.push_back(x)
                    out.push_back(y)
                    out.push_back(z)


def extend_clique(const int64_t[::1] adj_ptr, const int32_t[::1] adj_idx, verts, int s):
    cdef const int32_t[::1] vv = np.ascontiguousarray(verts, dtype=np.int32)
    cdef int r = vv.shape[0]
    cdef int need = s - r
    cdef vector[int32_t] ext
    cdef _Scratch sc = _Scratch(adj_ptr.shape[0] - 1)
    _extensions(adj_ptr, adj_idx, &vv[0], r, need, sc, ext)
    cdef int64_t k = ext.size() // need
    out = np.empty((k, s), dtype=np.int32)
    cdef int32_t[:, ::1] ov = out
    cdef int32_t row[4]
    cdef int64_t e
    cdef int i
    for e in range(k):
        for i in range(r):
            row[i] = vv[i]
        for i in range(need):
            row[r + i] = ext[e * need + i]
        _sort_small(row, s)
        for i in range(s):
            ov[e, i] = row[i]
    return out


cdef class LinkSource:
    """Yields, for a K_r, the groups of co-member K_r ids of every K_s containing it."""
    cdef public int width
    cdef vector[int32_t] buf

    cdef int64_t fill(self, int32_t R) except -1:
        return 0

    cdef int64_t degree(self, int32_t R) except -1:
        return 0

    def others(self, int32_t R):
        cdef int64_t g = self.fill(R)
        out = np.empty((g, self.width), dtype=np.int32)
        cdef int32_t[:, ::1] ov = out
        cdef int64_t a
        cdef int b
        for a in range(g):
            for b in range(self.width):
                ov[a, b] = self.buf[a * self.width + b]
        return out

    def py_degree(self, int32_t R):
        return self.degree(R)


cdef class OnDemandLinks(LinkSource):
    cdef const int64_t[::1] ptr
    cdef const int32_t[::1] idx
    cdef const int32_t[:, ::1] cliques
    cdef const int32_t[:, ::1] patterns
    cdef const int64_t[::1] edge_off
    cdef const int32_t[::1] edge_last
    cdef const int64_t[::1] tri_off
    cdef const int32_t[::1] tri_last
    cdef int r, s
    cdef _Scratch sc
    cdef vector[int32_t] ext

    def __init__(self, const int64_t[::1] adj_ptr, const int32_t[::1] adj_idx, const int32_t[:, ::1] cliques, int s,
                 const int32_t[:, ::1] patterns, const int64_t[::1] edge_off, const int32_t[::1] edge_last,
                 const int64_t[::1] tri_off, const int32_t[::1] tri_last):
        self.ptr = adj_ptr
        self.idx = adj_idx
        self.cliques = cliques
        self.patterns = patterns
        self.edge_off = edge_off
        self.edge_last = edge_last
        self.tri_off = tri_off
        self.tri_last = tri_last
        self.r = cliques.shape[1]
        self.s = s
        self.width = patterns.shape[0] - 1
        self.sc = _Scratch(adj_ptr.shape[0] - 1)

    cdef inline int64_t _find(self, const int32_t* t) except -2:
        cdef int64_t e, i, hi
        if self.r == 1:
            return t[0]
        hi = self.edge_off[t[0] + 1]
        e = _search(self.edge_last, self.edge_off[t[0]], hi, t[1])
        if e >= hi or self.edge_last[e] != t[1]:
            return -1
        if self.r == 2:
            return e
        hi = self.tri_off[e + 1]
        i = _search(self.tri_last, self.tri_off[e], hi, t[2])
        if i >= hi or self.tri_last[i] != t[2]:
            return -1
        return i

    cdef int64_t fill(self, int32_t R) except -1:
        cdef int r = self.r, s = self.s, need = self.s - self.r
        cdef int32_t verts[4]
        cdef int32_t S[4]
        cdef int32_t t[4]
        cdef int i, p, q
        cdef int64_t e, k, found
        cdef bint same
        for i in range(r):
            verts[i] = self.cliques[R, i]
        self.ext.clear()
        self.buf.clear()
        _extensions(self.ptr, self.idx, verts, r, need, self.sc, self.ext)
        k = self.ext.size() // need
        for e in range(k):
            for i in range(r):
                S[i] = verts[i]
            for i in range(need):
                S[r + i] = self.ext[e * need + i]
            _sort_small(S, s)
            for p in range(self.patterns.shape[0]):
                same = True
                for q in range(r):
                    t[q] = S[self.patterns[p, q]]
                    if t[q] != verts[q]:
                        same = False
                if same:
                    continue
                found = self._find(t)
                if found < 0:
                    raise KeyError([t[q] for q in range(r)])
                self.buf.push_back(<int32_t>found)
        return k

    cdef int64_t degree(self, int32_t R) except -1:
        cdef int32_t verts[4]
        cdef int i
        for i in range(self.r):
            verts[i] = self.cliques[R, i]
        self.ext.clear()
        _extensions(self.ptr, self.idx, verts, self.r, self.s - self.r, self.sc, self.ext)
        return self.ext.size() // (self.s - self.r)


cdef class MaterializedLinks(LinkSource):
    cdef const int32_t[:, ::1] links
    cdef int64_t[::1] inc_ptr
    cdef int32_t[::1] inc_idx

    def __init__(self, const int32_t[:, ::1] links, int64_t c):
        cdef int64_t L = links.shape[0], l
        cdef int w = links.shape[1], j
        self.links = links
        self.width = w - 1
        counts = np.zeros(c + 1, dtype=np.int64)
        cdef int64_t[::1] cv = counts
        for l in range(L):
            for j in range(w):
                cv[links[l, j] + 1] += 1
        ptr = np.cumsum(counts)
        self.inc_ptr = ptr
        self.inc_idx = np.empty(L * w, dtype=np.int32)
        fillpos = ptr[:-1].copy()
        cdef int64_t[::1] fp = fillpos
        cdef int32_t x
        for l in range(L):
            for j in range(w):
                x = links[l, j]
                self.inc_idx[fp[x]] = <int32_t>l
                fp[x] += 1

    cdef int64_t fill(self, int32_t R) except -1:
        cdef int64_t a, l
        cdef int j
        cdef int32_t x
        self.buf.clear()
        for a in range(self.inc_ptr[R], self.inc_ptr[R + 1]):
            l = self.inc_idx[a]
            for j in range(self.width + 1):
                x = self.links[l, j]
                if x != R:
                    self.buf.push_back(x)
        return self.inc_ptr[R + 1] - self.inc_ptr[R]

    cdef int64_t degree(self, int32_t R) except -1:
        return self.inc_ptr[R + 1] - self.inc_ptr[R]


cdef inline void _heap_push(vector[int32_t]& h, const int32_t[::1] key, int32_t x) noexcept nogil:
    cdef int64_t i = h.size(), p
    h.push_back(x)
    while i > 0:
        p = (i - 1) >> 1
        if key[h[p]] <= key[x]:
            break
        h[i] = h[p]
        i = p
    h[i] = x


cdef inline int32_t _heap_pop(vector[int32_t]& h, const int32_t[::1] key) noexcept nogil:
    cdef int32_t top = h[0]
    cdef int32_t x = h.back()
    cdef int64_t n, i, c
    h.pop_back()
    n = h.size()
    if n == 0:
        return top
    i = 0
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and key[h[c + 1]] < key[h[c]]:
            c += 1
        if key[x] <= key[h[c]]:
            break
        h[i] = h[c]
        i = c
    h[i] = x
    return top


def peel(LinkSource src, int64_t c, const int32_t[::1] priority):
    kappa_a = np.zeros(c, dtype=np.int32)
    order_a = np.zeros(c, dtype=np.int32)
    init_a = np.zeros(c, dtype=np.int32)
    cdef int32_t[::1] kappa = kappa_a
    cdef int32_t[::1] order = order_a
    cdef int32_t[::1] init = init_a
    cdef vector[int64_t] delta
    cdef vector[int64_t] bin_start
    cdef vector[int64_t] fillp
    cdef vector[int32_t] vert
    cdef vector[int64_t] pos
    cdef vector[uint8_t] processed
    cdef vector[int32_t] heap
    cdef int64_t R, d, maxd = 0, acc, i = 0, t = 0, p, q, g, a, k
    cdef int32_t x, w
    cdef int b, width = src.width
    cdef bint skip
    delta.resize(c)
    for R in range(c):
        d = src.degree(<int32_t>R)
        delta[R] = d
        init[R] = <int32_t>d
        if d > maxd:
            maxd = d
    bin_start.resize(maxd + 2, 0)
    for R in range(c):
        bin_start[delta[R] + 1] += 1
    acc = 0
    for d in range(maxd + 2):
        acc += bin_start[d]
        bin_start[d] = acc
    fillp = bin_start
    vert.resize(c)
    pos.resize(c)
    for R in range(c):
        p = fillp[delta[R]]
        vert[p] = <int32_t>R
        pos[R] = p
        fillp[delta[R]] += 1
    processed.resize(c, 0)

    while t < c:
        if heap.empty():
            k = delta[vert[i]]
            for p in range(i, bin_start[k + 1]):
                _heap_push(heap, priority, vert[p])
            i = bin_start[k + 1]
        R = _heap_pop(heap, priority)
        k = delta[R]
        kappa[R] = <int32_t>k
        order[t] = <int32_t>R
        t += 1
        g = src.fill(<int32_t>R)
        for a in range(g):
            skip = False
            for b in range(width):
                if processed[src.buf[a * width + b]]:
                    skip = True
                    break
            if skip:
                continue
            for b in range(width):
                x = src.buf[a * width + b]
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
                        _heap_push(heap, priority, x)
                        i = bin_start[k + 1]
        processed[R] = 1
    return kappa_a, order_a, init_a


cdef inline int32_t _find(vector[int32_t]& parent, int32_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef class _Sweep:
    """Union-find state for the highest-k-first component sweep."""
    cdef vector[int32_t] parent, size, top, stamp, made, head, tail, next_sib

    def __cinit__(self, int64_t c):
        self.parent.resize(c, -1)
        self.size.resize(c, 0)
        self.top.resize(c, -1)
        self.stamp.resize(c, -1)
        self.made.resize(c, -1)
        self.head.resize(c, -1)
        self.tail.resize(c, -1)

    cdef inline void pending(self, int32_t root, int32_t k) noexcept:
        cdef int32_t t
        if self.stamp[root] != k:
            self.stamp[root] = k
            t = self.top[root]
            self.head[root] = t
            self.tail[root] = t
            if t >= 0:
                self.next_sib[t] = -1

    cdef void join(self, int32_t x, int32_t y, int32_t k) noexcept:
        cdef int32_t tmp
        x = _find(self.parent, x)
        y = _find(self.parent, y)
        if x == y:
            return
        self.pending(x, k)
        self.pending(y, k)
        if self.size[x] < self.size[y] or (self.size[x] == self.size[y] and y < x):
            tmp = x
            x = y
            y = tmp
        self.parent[y] = x
        self.size[x] += self.size[y]
        if self.head[y] >= 0:
            if self.head[x] >= 0:
                self.next_sib[self.tail[x]] = self.head[y]
                self.tail[x] = self.tail[y]
            else:
                self.head[x] = self.head[y]
                self.tail[x] = self.tail[y]


def forest(LinkSource src, const int32_t[::1] kappa, const int32_t[::1] order):
    cdef int64_t c = kappa.shape[0]
    cdef _Sweep sw = _Sweep(c)
    cdef vector[int32_t] node_k
    cdef vector[int32_t] node_parent
    node_of_a = np.full(c, -1, dtype=np.int32)
    cdef int32_t[::1] node_of = node_of_a
    cdef int64_t end = c, start, t, g, a
    cdef int32_t k, R, root, nid, ch, x
    cdef int b, width = src.width
    cdef bint ok
    while end > 0:
        k = kappa[order[end - 1]]
        if k == 0:
            break
        start = end - 1
        while start > 0 and kappa[order[start - 1]] == k:
            start -= 1
        for t in range(start, end):
            R = order[t]
            sw.parent[R] = R
            sw.size[R] = 1
        for t in range(start, end):
            R = order[t]
            g = src.fill(R)
            for a in range(g):
                ok = True
                for b in range(width):
                    if sw.parent[src.buf[a * width + b]] < 0:
                        ok = False
                        break
                if ok:
                    for b in range(width):
                        sw.join(R, src.buf[a * width + b], k)
        for t in range(start, end):
            R = order[t]
            root = _find(sw.parent, R)
            if sw.made[root] != k:
                sw.made[root] = k
                sw.pending(root, k)
                nid = <int32_t>node_k.size()
                node_k.push_back(k)
                node_parent.push_back(-1)
                sw.next_sib.push_back(-1)
                ch = sw.head[root]
                while ch >= 0:
                    node_parent[ch] = nid
                    ch = sw.next_sib[ch]
                sw.top[root] = nid
            node_of[R] = sw.top[root]
        end = start
    nk = np.array(node_k, dtype=np.int32) if node_k.size() else np.empty(0, dtype=np.int32)
    npar = np.array(node_parent, dtype=np.int32) if node_parent.size() else np.empty(0, dtype=np.int32)
    return nk, npar, node_of_a


def count_internal_edges(const int64_t[::1] adj_ptr, const int32_t[::1] adj_idx, verts, uint8_t[::1] mark):
    cdef const int32_t[::1] vv = np.ascontiguousarray(verts, dtype=np.int32)
    cdef int64_t i, j, total = 0
    cdef int64_t nv = vv.shape[0]
    with nogil:
        for i in range(nv):
            mark[vv[i]] = 1
        for i in range(nv):
            for j in range(adj_ptr[vv[i]], adj_ptr[vv[i] + 1]):
                total += mark[adj_idx[j]]
        for i in range(nv):
            mark[vv[i]] = 0
    return total // 2
