"""Undirected simple graphs in CSR form: loading, normalisation, orderings."""

from __future__ import annotations

import gzip
import hashlib
import io
import logging
import os
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .errors import GraphParseError, UndefinedDensityError

log = logging.getLogger(__name__)

MAX_VERTEX_ID = 2**32 - 1


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    Vertices are dense ids ``0..n-1``; ``labels[v]`` is the id the vertex had in
    the input. ``indices[indptr[v]:indptr[v+1]]`` is the strictly ascending
    neighbour list of ``v``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0
    _fingerprint: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.labels):
            arr.setflags(write=False)

    @property
    def vertex_count(self) -> int:
        return len(self.indptr) - 1

    n = vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    m = edge_count

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array of ``u < v`` pairs in lexicographic order."""
        src = np.repeat(np.arange(self.n, dtype=np.int32), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    @property
    def fingerprint(self) -> str:
        """Cheap identity check: vertex and edge counts plus a hash of the degree sequence."""
        if not self._fingerprint:
            digest = hashlib.sha1(self.degrees.astype(np.int64).tobytes()).hexdigest()[:16]
            self._fingerprint.append(f"{self.n}:{self.m}:{digest}")
        return self._fingerprint[0]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.labels, other.labels)
        )

    __hash__ = None

    @classmethod
    def from_edges(cls, edges, num_vertices: int | None = None) -> Graph:
        """Build a graph from an iterable of ``(u, w)`` pairs.

        Without ``num_vertices`` ids are compacted in first-seen order, exactly
        as :func:`load_graph` does. With it, ids are taken as-is (``0..n-1``,
        isolated vertices kept) and labels are the identity.
        """
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        return _normalise(arr[:, 0], arr[:, 1], num_vertices)


def _normalise(us: np.ndarray, ws: np.ndarray, num_vertices: int | None = None) -> Graph:
    loops = us == ws
    n_loops = int(loops.sum())
    us = us[~loops]
    ws = ws[~loops]

    if num_vertices is None:
        seq = np.column_stack([us, ws]).ravel()
        uniq, first = np.unique(seq, return_index=True)
        by_first = np.argsort(first, kind="stable")
        labels = uniq[by_first]
        remap = np.empty(len(uniq), dtype=np.int64)
        remap[by_first] = np.arange(len(uniq))
        us = remap[np.searchsorted(uniq, us)]
        ws = remap[np.searchsorted(uniq, ws)]
        n = len(uniq)
    else:
        n = int(num_vertices)
        if len(us) and (min(us.min(), ws.min()) < 0 or max(us.max(), ws.max()) >= n):
            raise ValueError(f"edge endpoint outside 0..{n - 1}")
        labels = np.arange(n, dtype=np.int64)

    a = np.minimum(us, ws)
    b = np.maximum(us, ws)
    key = np.unique(a * max(n, 1) + b)
    n_dup = len(a) - len(key)
    a = key // max(n, 1)
    b = key % max(n, 1)

    src = np.concatenate([a, b])
    dst = np.concatenate([b, a])
    perm = np.lexsort((dst, src))
    src = src[perm]
    indices = dst[perm].astype(np.int32)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    if n_loops or n_dup:
        log.info("dropped %d self-loops and %d duplicate edges", n_loops, n_dup)
    return Graph(indptr, indices, labels.astype(np.int64), n_loops, n_dup)


def _open_text(source):
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        if path.endswith(".gz"):
            return gzip.open(path, "rb"), True
        return open(path, "rb"), True
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source), True
    if isinstance(source, io.TextIOBase):
        return source, False
    return source, False


def load_graph(source) -> Graph:
    """Parse a whitespace-separated edge list into a normalised :class:`Graph`.

    ``source`` may be a path (``.gz`` is decompressed), raw bytes, or an open
    binary or text stream. Lines whose first non-blank character is ``#`` or
    ``%`` are comments. Self-loops and repeated edges are dropped and counted.
    """
    stream, owned = _open_text(source)
    us = array("q")
    ws = array("q")
    try:
        for lineno, line in enumerate(stream, 1):
            parts = line.split()
            if not parts:
                continue
            head = parts[0][:1]
            if head in (b"#", b"%", "#", "%"):
                continue
            if len(parts) != 2 or not (parts[0].isdigit() and parts[1].isdigit()):
                raise GraphParseError(lineno, _decode(line).rstrip("\r\n"))
            u = int(parts[0])
            w = int(parts[1])
            if u > MAX_VERTEX_ID or w > MAX_VERTEX_ID:
                raise GraphParseError(lineno, _decode(line).rstrip("\r\n"), "vertex id exceeds 2^32-1")
            us.append(u)
            ws.append(w)
    finally:
        if owned:
            stream.close()
    return _normalise(np.frombuffer(us, dtype=np.int64), np.frombuffer(ws, dtype=np.int64))


def _decode(line):
    return line.decode("utf-8", "replace") if isinstance(line, bytes) else line


def write_edge_list(g: Graph, dest) -> None:
    """Write ``g`` with original labels so that :func:`load_graph` rebuilds it exactly.

    Edges are emitted so vertices first appear in id order; this reproduces
    the first-seen compaction whenever ``g`` itself came from an edge list.
    """
    lines = []
    emitted = set()
    seen = np.zeros(g.n, dtype=bool)
    lab = g.labels.tolist()
    for v in range(g.n):
        if seen[v]:
            continue
        nb = g.neighbors(v)
        if len(nb) == 0:
            continue
        if nb[0] < v:
            u, w = int(nb[0]), v
        elif v + 1 < g.n and g.has_edge(v, v + 1) and not seen[v + 1]:
            u, w = v, v + 1
        else:
            u, w = v, int(nb[0])
        lines.append(f"{lab[u]} {lab[w]}\n")
        emitted.add((min(u, w), max(u, w)))
        seen[u] = seen[w] = True
    for a, b in g.edges().tolist():
        if (a, b) not in emitted:
            lines.append(f"{lab[a]} {lab[b]}\n")
    text = "".join(lines)
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)


class Degeneracy(NamedTuple):
    order: np.ndarray
    removal_degrees: np.ndarray
    degeneracy: int


def degeneracy_order(g: Graph) -> Degeneracy:
    """Smallest-last removal order (ties broken by smallest vertex id)."""
    order, removal = kernels.degeneracy_order(g.indptr, g.indices)
    return Degeneracy(order, removal, int(removal.max()) if len(removal) else 0)


def vertex_set(g: Graph, members) -> np.ndarray:
    vs = np.unique(np.asarray(members, dtype=np.int64))
    if len(vs) and (vs[0] < 0 or vs[-1] >= g.n):
        raise ValueError("vertex id out of range")
    return vs.astype(np.int32)


def internal_edge_count(g: Graph, verts, mark: np.ndarray | None = None) -> int:
    if mark is None:
        mark = np.zeros(g.n, dtype=np.uint8)
    return int(kernels.count_internal_edges(g.indptr, g.indices, np.asarray(verts, dtype=np.int32), mark))


def induced_density(g: Graph, s) -> Fraction:
    """Edge density |E(S)| / C(|S|, 2) of the subgraph induced by ``s``."""
    vs = vertex_set(g, s)
    k = len(vs)
    if k < 2:
        raise UndefinedDensityError(f"density needs at least 2 vertices, got {k}")
    return Fraction(internal_edge_count(g, vs), k * (k - 1) // 2)


def random_graph(n: int, p: float, seed=None) -> Graph:
    """Erdős–Rényi G(n, p) with identity labels (isolated vertices kept)."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return Graph.from_edges(np.column_stack([iu[keep], ju[keep]]), num_vertices=n)
