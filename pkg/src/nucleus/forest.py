"""The forest of nuclei: extraction, views, invariants and export."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .cliques import DEFAULT_MEMORY_BUDGET
from .errors import ConsistencyError, InvariantError
from .graph import Graph
from .peel import KappaAssignment, check_monotone, choose_strategy, link_source


@dataclass(frozen=True)
class NucleusNode:
    id: int
    k: int
    member_rcliques: np.ndarray
    vertex_set: np.ndarray
    edges: int
    parent: int | None
    children: tuple

    @property
    def size(self) -> int:
        return len(self.vertex_set)

    @property
    def density_exact(self) -> Fraction:
        n = self.size
        return Fraction(self.edges, n * (n - 1) // 2) if n >= 2 else Fraction(0)

    @property
    def density(self) -> float:
        return float(self.density_exact)


class NucleusForest:
    """All k-(r,s)-nuclei of a graph, linked by containment.

    Node ids follow creation order (descending k, then discovery), so a child
    always has a smaller id than its parent. Member K_r of a node are the K_r
    whose deepest nucleus lies in the node's subtree; they are kept in one
    array laid out in DFS preorder, so each node's members are a slice.
    """

    def __init__(self, g: Graph, ka: KappaAssignment, node_k, node_parent, node_of):
        self.graph = g
        self.r = ka.r
        self.s = ka.s
        self.index = ka.index
        self.kappa = ka.kappa
        self.fingerprint = ka.fingerprint
        self.node_k = np.asarray(node_k, dtype=np.int32)
        self.node_parent = np.asarray(node_parent, dtype=np.int32)
        self.node_of = np.asarray(node_of, dtype=np.int32)
        nn = len(self.node_k)
        self.children = [[] for _ in range(nn)]
        for v, p in enumerate(self.node_parent.tolist()):
            if p >= 0:
                self.children[p].append(v)
        self.roots = [v for v in range(nn) if self.node_parent[v] < 0]
        self._preorder()
        self._layout_members()
        self._vertex_sets()

    def _preorder(self):
        nn = len(self.node_k)
        self.pre = np.zeros(nn, dtype=np.int64)
        self.pre_end = np.zeros(nn, dtype=np.int64)
        t = 0
        stack = [(v, False) for v in reversed(self.roots)]
        while stack:
            v, done = stack.pop()
            if done:
                self.pre_end[v] = t
                continue
            self.pre[v] = t
            t += 1
            stack.append((v, True))
            stack.extend((c, False) for c in reversed(self.children[v]))

    def _layout_members(self):
        assigned = np.flatnonzero(self.node_of >= 0)
        keys = self.pre[self.node_of[assigned]]
        order = np.argsort(keys, kind="stable")
        self._members = assigned[order].astype(np.int32)
        skeys = keys[order]
        self._mstart = np.searchsorted(skeys, self.pre, side="left")
        self._mend = np.searchsorted(skeys, self.pre_end, side="left")
        own_order = np.argsort(self.node_of[assigned], kind="stable")
        self._own = assigned[own_order]
        bounds = np.searchsorted(self.node_of[self._own], np.arange(len(self.node_k) + 1))
        self._own_bounds = bounds

    def _vertex_sets(self):
        g = self.graph
        mark = np.zeros(g.n, dtype=np.uint8)
        kern = _backend.kernels
        cl = self.index.cliques
        self.vertex_sets = []
        self.internal_edges = np.zeros(len(self.node_k), dtype=np.int64)
        for v in range(len(self.node_k)):
            own = self._own[self._own_bounds[v]:self._own_bounds[v + 1]]
            parts = [cl[own].ravel()] + [self.vertex_sets[c] for c in self.children[v]]
            vs = np.unique(np.concatenate(parts)).astype(np.int32)
            self.vertex_sets.append(vs)
            self.internal_edges[v] = kern.count_internal_edges(g.indptr, g.indices, vs, mark)
        self.sizes = np.array([len(vs) for vs in self.vertex_sets], dtype=np.int64)

    def __len__(self):
        return len(self.node_k)

    def __iter__(self):
        return (self.node(v) for v in range(len(self)))

    def member_rcliques(self, v: int) -> np.ndarray:
        return np.sort(self._members[self._mstart[v]:self._mend[v]])

    def member_count(self, v: int) -> int:
        return int(self._mend[v] - self._mstart[v])

    def nucleus_vertices(self, v: int) -> np.ndarray:
        if not 0 <= v < len(self):
            raise KeyError(f"unknown nucleus id {v}")
        return self.vertex_sets[v]

    def density_exact(self, v: int) -> Fraction:
        n = int(self.sizes[v])
        return Fraction(int(self.internal_edges[v]), n * (n - 1) // 2) if n >= 2 else Fraction(0)

    def density(self, v: int) -> float:
        return float(self.density_exact(v))

    def is_ancestor(self, a: int, b: int) -> bool:
        """True when ``a`` is a proper ancestor of ``b``."""
        return a != b and self.pre[a] <= self.pre[b] < self.pre_end[a]

    def node(self, v: int) -> NucleusNode:
        if not 0 <= v < len(self):
            raise KeyError(f"unknown nucleus id {v}")
        p = int(self.node_parent[v])
        return NucleusNode(
            id=v,
            k=int(self.node_k[v]),
            member_rcliques=self.member_rcliques(v),
            vertex_set=self.vertex_sets[v],
            edges=int(self.internal_edges[v]),
            parent=None if p < 0 else p,
            children=tuple(self.children[v]),
        )

    def nuclei_at(self, k: int) -> list:
        """Ids of the nodes that are k-nuclei: those with parent k < k <= node k."""
        out = []
        for v in range(len(self)):
            p = self.node_parent[v]
            lo = self.node_k[p] if p >= 0 else 0
            if lo < k <= self.node_k[v]:
                out.append(v)
        return out

    def view(self) -> ForestView:
        ids = list(range(len(self)))
        return ForestView(self, ids, {v: int(self.node_parent[v]) for v in ids}, {v: 1 for v in ids})


class ForestView:
    """Read-only selection of forest nodes with re-linked parents.

    ``chain[v]`` counts the original forest edges between ``v`` and its view
    parent (1 unless chains were contracted).
    """

    def __init__(self, forest: NucleusForest, ids, parent: dict, chain: dict):
        self.forest = forest
        self.ids = sorted(ids)
        self.parent = parent
        self.chain = chain
        self.children = {v: [] for v in self.ids}
        for v in self.ids:
            p = parent[v]
            if p >= 0:
                self.children[p].append(v)
        self.roots = [v for v in self.ids if parent[v] < 0]

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        return iter(self.ids)

    @property
    def leaves(self):
        return [v for v in self.ids if not self.children[v]]

    def size(self, v):
        return int(self.forest.sizes[v])

    def density(self, v):
        return self.forest.density(v)

    def density_exact(self, v):
        return self.forest.density_exact(v)

    def is_ancestor(self, a, b):
        return self.forest.is_ancestor(a, b)

    def _relink(self, keep):
        parent, chain = {}, {}
        for v in self.ids:
            if v not in keep:
                continue
            p, c = self.parent[v], self.chain[v]
            while p >= 0 and p not in keep:
                c += self.chain[p]
                p = self.parent[p]
            parent[v] = p
            chain[v] = c if p >= 0 else 0
        return ForestView(self.forest, keep, parent, chain)


def contract_chains(view) -> ForestView:
    """Collapse maximal runs of single-child nodes into one edge.

    Roots, leaves and branching nodes stay; every other node has exactly one
    child and is removed. ``chain`` on the surviving edge records how many
    original edges it replaces.
    """
    if isinstance(view, NucleusForest):
        view = view.view()
    keep = {v for v in view.ids if view.parent[v] < 0 or len(view.children[v]) != 1}
    return view._relink(keep)


def filter_by_size(view, min_vertices: int) -> ForestView:
    """Drop nuclei with fewer than ``min_vertices`` vertices, re-linking to the nearest kept ancestor."""
    if isinstance(view, NucleusForest):
        view = view.view()
    if min_vertices < 1:
        raise ValueError("min_vertices must be >= 1")
    keep = {v for v in view.ids if view.size(v) >= min_vertices}
    return view._relink(keep)


def nucleus_vertices(f: NucleusForest, node_id: int) -> np.ndarray:
    return f.nucleus_vertices(node_id)


def build_forest(
    g: Graph,
    ka: KappaAssignment,
    r: int | None = None,
    s: int | None = None,
    *,
    strategy: str = "auto",
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    backend: str | None = None,
) -> NucleusForest:
    """Extract every nucleus as a component of the level-k supergraph, highest k first.

    At level k only K_r with κ = k are activated; each K_s through them whose
    members all have κ >= k joins their components. Components that gained
    K_r become new nodes and adopt the nodes they absorbed as children.
    """
    if ka.fingerprint != g.fingerprint:
        raise ConsistencyError("κ assignment was computed on a different graph")
    if (r is not None and r != ka.r) or (s is not None and s != ka.s):
        raise ConsistencyError(f"κ assignment is for ({ka.r},{ka.s}), not ({r},{s})")
    kern = _backend.get(backend)
    used = choose_strategy(g, ka.r, ka.s, strategy, memory_budget)
    src = link_source(g, ka.index, ka.s, used, memory_budget, kern)
    node_k, node_parent, node_of = kern.forest(src, ka.kappa, ka.processing_order)
    return NucleusForest(g, ka, node_k, node_parent, node_of)


def decompose(g: Graph, r: int, s: int, **kw):
    """Run :func:`~nucleus.peel.set_k` then :func:`build_forest`; returns both."""
    from .peel import set_k

    forest_kw = {k: kw[k] for k in ("strategy", "memory_budget", "backend") if k in kw}
    ka = set_k(g, r, s, **kw)
    return ka, build_forest(g, ka, **forest_kw)


def check_invariants(f: NucleusForest, ka: KappaAssignment, sample: int | None = None, seed: int = 0) -> None:
    """Raise :class:`InvariantError` unless the structural invariants hold.

    Checks κ monotonicity along processing order, strictly increasing k from
    root to leaf, that each K_r's deepest nucleus has k = κ, nesting of
    member and vertex sets, pairwise laminarity (small forests only), and that
    every K_s with all members at level >= k lies within a single k-nucleus.
    ``sample`` bounds the per-K_r checks to that many random K_r.
    """
    check_monotone(ka)
    nk, npar = f.node_k, f.node_parent
    for v in range(len(f)):
        p = npar[v]
        if p >= 0:
            if nk[v] <= nk[p]:
                raise InvariantError(f"node {v} (k={nk[v]}) not deeper than parent {p} (k={nk[p]})")
            if f.member_count(p) < f.member_count(v):
                raise InvariantError(f"parent {p} has fewer K_r than child {v}")
            if not np.all(np.isin(f.vertex_sets[v], f.vertex_sets[p], assume_unique=True)):
                raise InvariantError(f"vertex set of {v} not inside parent {p}")

    c = len(ka.kappa)
    if sample is None or sample >= c:
        chosen = np.arange(c)
    else:
        chosen = np.random.default_rng(seed).choice(c, size=sample, replace=False)
    kappa = ka.kappa
    for R in chosen.tolist():
        v = f.node_of[R]
        if kappa[R] == 0:
            if v >= 0:
                raise InvariantError(f"K_r {R} with κ=0 assigned to nucleus {v}")
            continue
        if v < 0 or nk[v] != kappa[R]:
            raise InvariantError(f"K_r {R} (κ={kappa[R]}) deepest nucleus has wrong k")

    if len(f) <= 300:
        sets = [set(f.member_rcliques(v).tolist()) for v in range(len(f))]
        for a in range(len(f)):
            for b in range(a + 1, len(f)):
                inter = sets[a] & sets[b]
                if not inter:
                    continue
                if not (f.is_ancestor(a, b) or f.is_ancestor(b, a)):
                    raise InvariantError(f"non-nested nuclei {a} and {b} share a K_r")
                if inter != sets[a] and inter != sets[b]:
                    raise InvariantError(f"nuclei {a} and {b} overlap without nesting")

    src = link_source(f.graph, ka.index, ka.s, "on-demand")
    for R in chosen.tolist():
        k = int(kappa[R])
        if k == 0:
            continue
        others = src.others(R)
        if not len(others):
            raise InvariantError(f"K_r {R} has κ={k} but lies in no K_s")
        lam = np.minimum(kappa[others].min(axis=1), k)
        for row, level in zip(others.tolist(), lam.tolist()):
            if level < 1:
                continue
            want = _level_ancestor(f, f.node_of[R], level)
            for x in row:
                if _level_ancestor(f, f.node_of[x], level) != want:
                    raise InvariantError(f"K_s through K_r {R} split across {level}-nuclei")


def _level_ancestor(f, v, k):
    # topmost ancestor of v whose k is still >= k: the k-nucleus containing v
    while True:
        p = f.node_parent[v]
        if p < 0 or f.node_k[p] < k:
            return v
        v = p


PALETTE = (
    "#0000ff", "#0066ff", "#00ccff", "#00ffcc", "#00ff66", "#00ff00",
    "#66ff00", "#ccff00", "#ffcc00", "#ff6600", "#ff0000",
)
SHAPE_BUCKETS = ((100, "circle"), (1000, "hexagon"), (10000, "square"))
MAX_WIDTH = 1.5


def density_color(density: Fraction) -> str:
    return PALETTE[min(int(density * 10), 10)]


def size_shape(size: int) -> tuple:
    """(shape, bucket upper bound) for a nucleus of ``size`` vertices."""
    for bound, shape in SHAPE_BUCKETS:
        if size <= bound:
            return shape, bound
    return "triangle", None


def forest_to_dict(view: ForestView, vertices: bool = False) -> dict:
    f = view.forest
    labels = f.graph.labels
    nodes = []
    for v in view.ids:
        p = view.parent[v]
        rec = {
            "id": v,
            "k": int(f.node_k[v]),
            "size": view.size(v),
            "density": round(view.density(v), 6),
            "parent": None if p < 0 else p,
            "children": list(view.children[v]),
            "chain": view.chain[v],
        }
        if vertices:
            rec["vertices"] = sorted(labels[f.vertex_sets[v]].tolist())
        nodes.append(rec)
    return {"nodes": nodes, "roots": list(view.roots)}


def forest_to_json(view: ForestView, vertices: bool = False) -> str:
    return json.dumps(forest_to_dict(view, vertices))


def forest_to_dot(view: ForestView) -> str:
    """Graphviz rendering: fill colour from density, shape and width from size."""
    top = max((view.size(v) for v in view.ids if size_shape(view.size(v))[1] is None), default=1)
    lines = ["digraph nuclei {", "  node [style=filled, fixedsize=true, fontsize=8];"]
    for v in view.ids:
        size = view.size(v)
        shape, bound = size_shape(size)
        width = MAX_WIDTH * size / (bound or top)
        lines.append(
            f'  n{v} [label="{size}", shape={shape}, fillcolor="{density_color(view.density_exact(v))}", '
            f'width={width:.3f}, tooltip="k={int(view.forest.node_k[v])} density={view.density(v):.6f}"];'
        )
    for v in view.ids:
        p = view.parent[v]
        if p < 0:
            continue
        attr = f' [label="{view.chain[v]}"]' if view.chain[v] > 1 else ""
        lines.append(f"  n{p} -> n{v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
