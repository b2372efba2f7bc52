"""Fixed-size clique enumeration and K_s discovery around a K_r."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from ._backend import kernels
from .errors import CapacityError, UnsupportedParameterError
from .graph import Graph, degeneracy_order

DEFAULT_MEMORY_BUDGET = 8 * 2**30
MAX_R = 4


def _check_rs(r, s=None):
    if r not in (1, 2, 3, 4):
        raise UnsupportedParameterError(f"r must be in 1..4, got {r}")
    if s is not None and not (r < s <= MAX_R):
        raise UnsupportedParameterError(f"need r < s <= 4, got r={r}, s={s}")


class CliqueIndex:
    """All K_r of a graph, sorted lexicographically by vertex tuple.

    Row ``i`` of :attr:`cliques` is clique ``i``. For ``r >= 2`` the cliques
    sharing an (r-1)-prefix are contiguous, and :attr:`offsets` (indexed by the
    prefix's id in :attr:`parent`) delimits them, so a tuple is located with
    one binary search per level.
    """

    def __init__(self, g: Graph, r: int, cliques: np.ndarray, parent: CliqueIndex | None):
        self.graph = g
        self.r = r
        self.cliques = np.ascontiguousarray(cliques, dtype=np.int32)
        self.cliques.setflags(write=False)
        self.parent = parent
        n = max(g.n, 1)
        if r == 1:
            self.keys = self.cliques[:, 0].astype(np.int64)
            self.offsets = None
        else:
            prefix = parent.index_of_rows(self.cliques[:, :-1])
            self.keys = prefix * n + self.cliques[:, -1]
            self.offsets = np.searchsorted(prefix, np.arange(len(parent) + 1)).astype(np.int64)
        self.per_vertex_count = np.bincount(self.cliques.ravel(), minlength=g.n).astype(np.int64)

    def __len__(self):
        return len(self.cliques)

    @property
    def clique_of_index(self) -> np.ndarray:
        return self.cliques

    @property
    def index_of_clique(self) -> Mapping:
        return _IndexMapping(self)

    @property
    def last(self) -> np.ndarray:
        return np.ascontiguousarray(self.cliques[:, -1])

    def clique(self, i: int) -> tuple:
        return tuple(int(v) for v in self.cliques[i])

    def index_of(self, verts) -> int:
        """Index of the clique with vertex set ``verts``; ``KeyError`` if it is not one."""
        t = tuple(sorted(int(v) for v in verts))
        if len(t) != self.r:
            raise KeyError(t)
        i = int(self.index_of_rows(np.array([t], dtype=np.int64))[0])
        if i < 0:
            raise KeyError(t)
        return i

    def index_of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Vectorised lookup of sorted rows; ``-1`` where a row is not a clique."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.r)
        n = max(self.graph.n, 1)
        if self.r == 1:
            ok = (rows[:, 0] >= 0) & (rows[:, 0] < self.graph.n)
            return np.where(ok, rows[:, 0], -1)
        prefix = self.parent.index_of_rows(rows[:, :-1])
        key = prefix * n + rows[:, -1]
        pos = np.searchsorted(self.keys, key)
        pos_c = np.minimum(pos, max(len(self.keys) - 1, 0))
        found = (prefix >= 0) & (pos < len(self.keys))
        if len(self.keys):
            found &= self.keys[pos_c] == key
        return np.where(found, pos, -1)


class _IndexMapping(Mapping):
    def __init__(self, idx):
        self._idx = idx

    def __getitem__(self, verts):
        return self._idx.index_of(verts)

    def __iter__(self):
        return (self._idx.clique(i) for i in range(len(self._idx)))

    def __len__(self):
        return len(self._idx)


def _oriented(g: Graph):
    order = degeneracy_order(g).order
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n)
    src = np.repeat(np.arange(g.n), g.degrees)
    keep = rank[g.indices] > rank[src]
    out_idx = np.ascontiguousarray(g.indices[keep])
    out_ptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src[keep], minlength=g.n), out=out_ptr[1:])
    return out_ptr, out_idx


def _bytes_per_clique(r):
    # tuple storage + lookup key + vertex-count share + peeling state
    return 4 * r + 8 + 16


def count_r_cliques(g: Graph, r: int) -> int:
    _check_rs(r)
    if r == 1:
        return g.n
    if r == 2:
        return g.m
    out_ptr, out_idx = _oriented(g)
    return int(kernels.count_cliques(out_ptr, out_idx, r))


def enumerate_r_cliques(g: Graph, r: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> CliqueIndex:
    """Every K_r of ``g`` exactly once, indexed in lexicographic order of vertex tuples.

    r=1 yields vertices, r=2 edges. Higher orders orient edges along the
    degeneracy order so each clique is produced once, then sort.
    """
    _check_rs(r)
    if r == 1:
        return CliqueIndex(g, 1, np.arange(g.n, dtype=np.int32)[:, None], None)
    parent = enumerate_r_cliques(g, r - 1, memory_budget)
    if r == 2:
        return CliqueIndex(g, 2, g.edges(), parent)
    out_ptr, out_idx = _oriented(g)
    count = int(kernels.count_cliques(out_ptr, out_idx, r))
    need = count * _bytes_per_clique(r)
    if need > memory_budget:
        raise CapacityError(
            f"{count} {r}-cliques need ~{need} bytes, over the {memory_budget}-byte budget"
        )
    rows = kernels.enumerate_cliques(out_ptr, out_idx, r)
    rows = rows[np.lexsort(rows.T[::-1])] if len(rows) else rows
    return CliqueIndex(g, r, rows, parent)


def s_cliques_containing(g: Graph, idx: CliqueIndex, R, s: int) -> np.ndarray:
    """Every K_s containing the K_r ``R`` as sorted rows, ordered by the added vertices.

    ``R`` is a clique index or a vertex tuple. Found by intersecting the
    neighbour lists of R's vertices, scanning the shortest one.
    """
    _check_rs(idx.r, s)
    verts = idx.cliques[R] if np.isscalar(R) else np.array(sorted(R), dtype=np.int32)
    return kernels.extend_clique(g.indptr, g.indices, verts, s)


def s_degree(g: Graph, idx: CliqueIndex, R, s: int) -> int:
    """Number of K_s containing ``R``."""
    return len(s_cliques_containing(g, idx, R, s))


def subset_patterns(r: int, s: int) -> np.ndarray:
    """Positions of each r-subset inside a sorted s-tuple, in lexicographic order."""
    return np.array(list(combinations(range(s), r)), dtype=np.int32).reshape(-1, r)


@dataclass(frozen=True)
class Supergraph:
    """Materialised node/link structure: one node per K_r, one hyperlink per K_s."""

    nodes: CliqueIndex
    s: int
    s_cliques: np.ndarray
    links: np.ndarray

    @property
    def r(self):
        return self.nodes.r

    def link_count(self):
        return len(self.links)


def supergraph_bytes(count_s: int, r: int, s: int) -> int:
    width = comb(s, r)
    # link rows + incidence lists + the K_s tuples themselves
    return count_s * (4 * width * 2 + 4 * s)


def build_supergraph(
    g: Graph,
    r: int,
    s: int,
    nodes: CliqueIndex | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    accept_s4: bool = False,
) -> Supergraph:
    """Store every K_s as a hyperlink over its C(s, r) member K_r.

    Refuses (``CapacityError``) when the estimated link storage exceeds
    ``memory_budget``, and for ``s=4`` unless ``accept_s4`` is set; the
    on-demand strategy of :func:`nucleus.peel.set_k` needs no link storage.
    """
    _check_rs(r, s)
    if s == 4 and not accept_s4:
        raise CapacityError("materialising 4-cliques needs accept_s4=True; use the on-demand strategy")
    count_s = count_r_cliques(g, s)
    need = supergraph_bytes(count_s, r, s)
    if need > memory_budget:
        raise CapacityError(
            f"{count_s} {s}-cliques need ~{need} bytes of link storage, over the "
            f"{memory_budget}-byte budget; use the on-demand strategy"
        )
    if nodes is None:
        nodes = enumerate_r_cliques(g, r, memory_budget)
    s_rows = enumerate_r_cliques(g, s, memory_budget).cliques
    pats = subset_patterns(r, s)
    links = np.empty((len(s_rows), len(pats)), dtype=np.int32)
    for j, p in enumerate(pats):
        links[:, j] = nodes.index_of_rows(s_rows[:, p])
    return Supergraph(nodes, s, s_rows, links)
